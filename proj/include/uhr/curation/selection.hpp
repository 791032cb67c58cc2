#pragma once

#include "uhr/curation/record.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace uhr::curation {

enum class RankKey { glcm_score, shannon_entropy, aesthetic };

std::string_view to_string(RankKey key);

// What percentile_select does with an in-S record that lacks the key.
enum class MissingKey {
    reject,     // throw InvalidInput
    rank_last,  // never selected, still counted in |S|
};

// Sets in_S from the absolute thresholds. Records without metrics fail.
void preliminary_filter(std::vector<ImageRecord>& records, const SelectionConfig& cfg);

// Ranks the in-S records by `key` descending (ties by ascending path) and
// marks the top ceil(fraction * |S|). Returns one flag per input record.
std::vector<bool> percentile_select(const std::vector<ImageRecord>& records, RankKey key,
                                    double fraction, MissingKey missing = MissingKey::reject);

// selected = in_SG && in_SE && in_SA.
void intersect(std::vector<ImageRecord>& records);

// Number of records kept by a top-fraction cut of n.
std::size_t top_count(std::size_t n, double fraction);

// Filter, the three percentile cuts, and the intersection. Records without
// an aesthetic score are left out of S_A.
void run_selection(std::vector<ImageRecord>& records, const SelectionConfig& cfg);

} // namespace uhr::curation

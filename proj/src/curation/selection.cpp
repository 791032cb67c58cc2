#include "uhr/curation/selection.hpp"

#include "uhr/common/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

namespace uhr::curation {

std::string_view to_string(RankKey key) {
    switch (key) {
    case RankKey::glcm_score: return "glcm_score";
    case RankKey::shannon_entropy: return "shannon_entropy";
    case RankKey::aesthetic: return "aesthetic";
    }
    return "?";
}

void preliminary_filter(std::vector<ImageRecord>& records, const SelectionConfig& cfg) {
    for (auto& r : records) {
        r.in_S = r.metrics && r.avg_resolution() >= cfg.min_avg_resolution &&
                 r.metrics->laplacian_var >= cfg.laplacian_min &&
                 r.metrics->sobel_edge_density >= cfg.sobel_density_min;
    }
}

std::size_t top_count(std::size_t n, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw InvalidInput(fmt::format("fraction must be in (0, 1], got {}", fraction));
    // The slack absorbs products such as 0.1 * 30 = 3.0000000000000004.
    const double k = std::ceil(fraction * static_cast<double>(n) - 1e-9);
    return std::min(n, static_cast<std::size_t>(std::max(k, 0.0)));
}

namespace {

std::optional<double> key_value(const ImageRecord& r, RankKey key) {
    if (!r.metrics) return std::nullopt;
    switch (key) {
    case RankKey::glcm_score: return r.metrics->glcm_score;
    case RankKey::shannon_entropy: return r.metrics->shannon_entropy;
    case RankKey::aesthetic: return r.metrics->aesthetic;
    }
    return std::nullopt;
}

} // namespace

std::vector<bool> percentile_select(const std::vector<ImageRecord>& records, RankKey key,
                                    double fraction, MissingKey missing) {
    struct Entry {
        std::size_t index;
        double value;
    };
    std::vector<Entry> ranked;
    std::size_t in_s = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!records[i].in_S) continue;
        ++in_s;
        const auto v = key_value(records[i], key);
        if (!v) {
            if (missing == MissingKey::reject)
                throw InvalidInput(fmt::format("record {} has no {}", records[i].path, to_string(key)));
            continue;
        }
        ranked.push_back({i, *v});
    }

    std::sort(ranked.begin(), ranked.end(), [&](const Entry& a, const Entry& b) {
        if (a.value != b.value) return a.value > b.value;
        return records[a.index].path < records[b.index].path;
    });

    std::vector<bool> flags(records.size(), false);
    const std::size_t k = std::min(top_count(in_s, fraction), ranked.size());
    for (std::size_t i = 0; i < k; ++i) flags[ranked[i].index] = true;
    return flags;
}

void intersect(std::vector<ImageRecord>& records) {
    for (auto& r : records) r.selected = r.in_SG && r.in_SE && r.in_SA;
}

void run_selection(std::vector<ImageRecord>& records, const SelectionConfig& cfg) {
    validate(cfg);
    preliminary_filter(records, cfg);
    const auto sg = percentile_select(records, RankKey::glcm_score, cfg.top_fraction);
    const auto se = percentile_select(records, RankKey::shannon_entropy, cfg.top_fraction);
    const auto sa = percentile_select(records, RankKey::aesthetic, cfg.top_fraction, MissingKey::rank_last);
    for (std::size_t i = 0; i < records.size(); ++i) {
        records[i].in_SG = sg[i];
        records[i].in_SE = se[i];
        records[i].in_SA = sa[i];
    }
    intersect(records);
}

} // namespace uhr::curation

#pragma once

#include "uhr/curation/record.hpp"

#include <json.hpp>
#include <string>
#include <vector>

namespace uhr::curation {

// Equal-width bins spanning [min, max] of the observed values; the last
// bin is closed. A single repeated value gets one bin.
struct Histogram {
    std::string name;
    std::vector<double> edges;  // counts.size() + 1 entries, empty when no data
    std::vector<std::size_t> counts;
    std::size_t samples = 0;
};

Histogram make_histogram(std::string name, const std::vector<double>& values, std::size_t bins);

struct SubsetCounts {
    std::size_t total = 0;
    std::size_t with_metrics = 0;
    std::size_t scored = 0;
    std::size_t captioned = 0;
    std::size_t S = 0;
    std::size_t SG = 0;
    std::size_t SE = 0;
    std::size_t SA = 0;
    std::size_t selected = 0;
};

struct StatsReport {
    SubsetCounts counts;
    std::vector<Histogram> histograms;
};

// Histograms of avg_resolution, width, height, caption_len and every scalar
// metric, plus subset sizes.
StatsReport stats_report(const std::vector<ImageRecord>& records, std::size_t bins = 10);

nlohmann::ordered_json to_json(const StatsReport& report);
std::string to_text(const StatsReport& report);

} // namespace uhr::curation

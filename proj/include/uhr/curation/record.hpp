#pragma once

#include "uhr/metrics/metric_vector.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace uhr::curation {

// Thresholds and ranking parameters for the selection stages. The three
// preliminary thresholds are tunable guesses; top_fraction and
// min_avg_resolution are fixed by the target dataset definition.
struct SelectionConfig {
    double laplacian_min = 100.0;
    double sobel_density_min = 0.05;
    double sobel_grad_threshold = 50.0;
    double top_fraction = 0.5;
    double min_avg_resolution = 3000.0;
    std::size_t metric_long_side = 1024;
    int glcm_levels = 32;
    int glcm_distance = 1;

    metrics::MetricsConfig metrics_config() const {
        return {sobel_grad_threshold, metric_long_side, glcm_levels, glcm_distance};
    }
};

// Throws InvalidInput on out-of-range values.
void validate(const SelectionConfig& cfg);

struct ImageRecord {
    std::string path;  // corpus-relative, '/' separated
    std::size_t width = 0;
    std::size_t height = 0;
    std::optional<metrics::MetricVector> metrics;  // empty for scan stubs
    std::optional<std::string> caption;
    std::optional<std::size_t> caption_len;
    bool in_S = false;
    bool in_SG = false;
    bool in_SE = false;
    bool in_SA = false;
    bool selected = false;

    double avg_resolution() const { return 0.5 * static_cast<double>(width + height); }
    bool operator==(const ImageRecord&) const = default;
};

// Manifests store metric values at single precision; rounding at the source
// makes a manifest round trip exact.
double to_manifest_precision(double v);
void round_to_manifest_precision(metrics::MetricVector& m);

} // namespace uhr::curation

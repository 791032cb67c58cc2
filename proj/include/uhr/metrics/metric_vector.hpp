#pragma once

#include "uhr/metrics/glcm.hpp"
#include "uhr/metrics/gray_image.hpp"

#include <optional>

namespace uhr::metrics {

struct MetricsConfig {
    double sobel_grad_threshold = 50.0;
    // GLCM and entropy run on a copy whose long side is at most this.
    std::size_t metric_long_side = 1024;
    int glcm_levels = 32;
    int glcm_distance = 1;
};

struct MetricVector {
    double laplacian_var = 0.0;
    double sobel_edge_density = 0.0;
    std::array<GlcmFeatures, kGlcmDirections> glcm{};
    double glcm_score = 0.0;
    double shannon_entropy = 0.0;
    std::optional<double> aesthetic;

    bool operator==(const MetricVector&) const = default;
};

// Sharpness metrics at full resolution, texture and entropy on the
// downsampled copy. The aesthetic score is left empty.
MetricVector compute_metrics(const GrayImage& img, const MetricsConfig& cfg);

} // namespace uhr::metrics

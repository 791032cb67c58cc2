#include "uhr/metrics/metric_vector.hpp"

#include "uhr/metrics/filters.hpp"

namespace uhr::metrics {

MetricVector compute_metrics(const GrayImage& img, const MetricsConfig& cfg) {
    MetricVector m;
    m.laplacian_var = laplacian_variance(img);
    m.sobel_edge_density = sobel_edge_density(img, cfg.sobel_grad_threshold);

    const GrayImage small = downsample(img, cfg.metric_long_side);
    const GlcmScore g = glcm_score(small, cfg.glcm_levels, cfg.glcm_distance);
    m.glcm = g.directions;
    m.glcm_score = g.aggregate;
    m.shannon_entropy = shannon_entropy(small);
    return m;
}

} // namespace uhr::metrics

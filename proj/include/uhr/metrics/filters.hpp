#pragma once

#include "uhr/metrics/gray_image.hpp"

namespace uhr::metrics {

// Population variance of the 4-neighbour Laplacian response over interior
// pixels (no padding). Requires at least 3x3.
double laplacian_variance(const GrayImage& img);

// Fraction of interior pixels whose Sobel gradient magnitude is strictly
// greater than `grad_threshold`. Requires at least 3x3.
double sobel_edge_density(const GrayImage& img, double grad_threshold);

// Shannon entropy in bits of the 256-bin histogram of rounded pixel values.
double shannon_entropy(const GrayImage& img);

} // namespace uhr::metrics

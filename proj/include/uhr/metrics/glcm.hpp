#pragma once

#include "uhr/common/grid.hpp"
#include "uhr/metrics/gray_image.hpp"

#include <array>
#include <cstdint>

namespace uhr::metrics {

// Gray levels in [0, levels). Rows are image y, columns image x.
struct IndexedImage {
    Grid<std::uint16_t> pixels;
    int levels = 0;
};

// One co-occurrence offset: pair (x, y) with (x + dx, y + dy).
struct Offset {
    int dx = 0;
    int dy = 0;
};

struct GlcmFeatures {
    double contrast = 0.0;
    double entropy = 0.0;  // nats
    double correlation = 0.0;
    bool degenerate = false;  // a marginal has zero spread; correlation forced to 0

    bool operator==(const GlcmFeatures&) const = default;
};

// Directions in the order 0, 45, 90, 135 degrees.
inline constexpr std::size_t kGlcmDirections = 4;

struct GlcmScore {
    std::array<GlcmFeatures, kGlcmDirections> directions{};
    // Mean over directions of (contrast + entropy).
    double aggregate = 0.0;
};

// bin = floor(value / 256 * levels), clamped to levels - 1. levels in [2, 256].
IndexedImage quantize_levels(const GrayImage& img, int levels);

// Normalized symmetric co-occurrence matrix (levels x levels).
Grid<double> glcm(const IndexedImage& img, Offset offset);

// Throws InvalidInput unless the matrix is square and sums to 1 within 1e-9.
GlcmFeatures glcm_features(const Grid<double>& matrix);

// The four standard offsets at the given distance.
std::array<Offset, kGlcmDirections> glcm_offsets(int distance);

GlcmScore glcm_score(const GrayImage& img, int levels, int distance);

} // namespace uhr::metrics

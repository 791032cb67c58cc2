#include "uhr/metrics/glcm.hpp"

#include "uhr/common/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace uhr::metrics {

IndexedImage quantize_levels(const GrayImage& img, int levels) {
    if (levels < 2 || levels > 256)
        throw InvalidInput(fmt::format("levels must be in [2, 256], got {}", levels));
    IndexedImage out{Grid<std::uint16_t>(img.height(), img.width()), levels};
    for (std::size_t y = 0; y < img.height(); ++y)
        for (std::size_t x = 0; x < img.width(); ++x) {
            const auto bin = static_cast<int>(std::floor(img(x, y) / 256.0 * levels));
            out.pixels(y, x) = static_cast<std::uint16_t>(std::min(bin, levels - 1));
        }
    return out;
}

Grid<double> glcm(const IndexedImage& img, Offset offset) {
    const auto w = static_cast<long>(img.pixels.cols());
    const auto h = static_cast<long>(img.pixels.rows());
    const auto levels = static_cast<std::size_t>(img.levels);

    // Valid x range keeps both x and x + dx inside [0, w).
    const long x0 = std::max(0L, -static_cast<long>(offset.dx));
    const long x1 = std::min(w, w - offset.dx);
    const long y0 = std::max(0L, -static_cast<long>(offset.dy));
    const long y1 = std::min(h, h - offset.dy);
    if (x0 >= x1 || y0 >= y1)
        throw InvalidInput(fmt::format("offset ({}, {}) has no valid pixel pairs in a {}x{} image",
                                       offset.dx, offset.dy, w, h));

    std::vector<std::uint64_t> counts(levels * levels, 0);
    for (long y = y0; y < y1; ++y)
        for (long x = x0; x < x1; ++x) {
            const std::size_t a = img.pixels(y, x);
            const std::size_t b = img.pixels(y + offset.dy, x + offset.dx);
            ++counts[a * levels + b];
            ++counts[b * levels + a];
        }

    const auto total = static_cast<double>(2 * (x1 - x0) * (y1 - y0));
    Grid<double> m(levels, levels);
    for (std::size_t i = 0; i < counts.size(); ++i) m.values()[i] = counts[i] / total;
    return m;
}

GlcmFeatures glcm_features(const Grid<double>& p) {
    if (p.rows() != p.cols() || p.rows() == 0) throw InvalidInput("GLCM must be square");
    const std::size_t n = p.rows();
    double sum = 0.0;
    for (double v : p.values()) {
        if (!(v >= 0.0)) throw InvalidInput("GLCM entries must be nonnegative");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidInput(fmt::format("GLCM is not normalized (sum = {})", sum));

    GlcmFeatures f;
    double mu_i = 0.0, mu_j = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double v = p(i, j);
            if (v <= 0.0) continue;
            const double d = static_cast<double>(i) - static_cast<double>(j);
            f.contrast += v * d * d;
            f.entropy -= v * std::log(v);
            mu_i += v * i;
            mu_j += v * j;
        }

    double var_i = 0.0, var_j = 0.0, cov = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double v = p(i, j);
            if (v <= 0.0) continue;
            const double di = i - mu_i;
            const double dj = j - mu_j;
            var_i += v * di * di;
            var_j += v * dj * dj;
            cov += v * di * dj;
        }

    f.entropy += 0.0;
    const double denom = std::sqrt(var_i) * std::sqrt(var_j);
    if (denom == 0.0) {
        f.degenerate = true;
        f.correlation = 0.0;
    } else {
        f.correlation = std::clamp(cov / denom, -1.0, 1.0);
    }
    return f;
}

std::array<Offset, kGlcmDirections> glcm_offsets(int distance) {
    if (distance < 1) throw InvalidInput("GLCM distance must be at least 1");
    return {Offset{distance, 0}, Offset{distance, distance}, Offset{0, distance},
            Offset{-distance, distance}};
}

GlcmScore glcm_score(const GrayImage& img, int levels, int distance) {
    const auto q = quantize_levels(img, levels);
    GlcmScore score;
    double acc = 0.0;
    const auto offsets = glcm_offsets(distance);
    for (std::size_t d = 0; d < kGlcmDirections; ++d) {
        score.directions[d] = glcm_features(glcm(q, offsets[d]));
        acc += score.directions[d].contrast + score.directions[d].entropy;
    }
    score.aggregate = acc / kGlcmDirections;
    return score;
}

} // namespace uhr::metrics

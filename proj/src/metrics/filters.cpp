#include "uhr/metrics/filters.hpp"

#include "uhr/common/error.hpp"

#include <array>
#include <cmath>
#include <cstdint>

namespace uhr::metrics {

namespace {

void require_3x3(const GrayImage& img, const char* what) {
    if (img.width() < 3 || img.height() < 3)
        throw InvalidInput(std::string(what) + " needs an image of at least 3x3");
}

} // namespace

double laplacian_variance(const GrayImage& img) {
    require_3x3(img, "laplacian_variance");
    const std::size_t w = img.width();
    const std::size_t h = img.height();
    const auto n = static_cast<double>((w - 2) * (h - 2));

    // Two passes: mean first, then centred sum of squares.
    auto response = [&](std::size_t x, std::size_t y) {
        return img(x, y - 1) + img(x - 1, y) - 4.0 * img(x, y) + img(x + 1, y) + img(x, y + 1);
    };
    double sum = 0.0;
    for (std::size_t y = 1; y + 1 < h; ++y)
        for (std::size_t x = 1; x + 1 < w; ++x) sum += response(x, y);
    const double mean = sum / n;
    double ss = 0.0;
    for (std::size_t y = 1; y + 1 < h; ++y)
        for (std::size_t x = 1; x + 1 < w; ++x) {
            const double d = response(x, y) - mean;
            ss += d * d;
        }
    return ss / n;
}

double sobel_edge_density(const GrayImage& img, double grad_threshold) {
    require_3x3(img, "sobel_edge_density");
    if (!(grad_threshold >= 0.0)) throw InvalidInput("sobel threshold must be nonnegative");
    const std::size_t w = img.width();
    const std::size_t h = img.height();
    // Compare squared magnitudes; avoids a sqrt per pixel.
    const double t2 = grad_threshold * grad_threshold;
    std::size_t above = 0;
    for (std::size_t y = 1; y + 1 < h; ++y) {
        for (std::size_t x = 1; x + 1 < w; ++x) {
            const double gx = (img(x + 1, y - 1) + 2.0 * img(x + 1, y) + img(x + 1, y + 1)) -
                              (img(x - 1, y - 1) + 2.0 * img(x - 1, y) + img(x - 1, y + 1));
            const double gy = (img(x - 1, y + 1) + 2.0 * img(x, y + 1) + img(x + 1, y + 1)) -
                              (img(x - 1, y - 1) + 2.0 * img(x, y - 1) + img(x + 1, y - 1));
            if (gx * gx + gy * gy > t2) ++above;
        }
    }
    return static_cast<double>(above) / static_cast<double>((w - 2) * (h - 2));
}

double shannon_entropy(const GrayImage& img) {
    std::array<std::uint64_t, 256> hist{};
    for (double v : img.values()) ++hist[static_cast<std::size_t>(std::lround(v))];
    const auto n = static_cast<double>(img.values().size());
    double h = 0.0;
    for (auto c : hist) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h -= p * std::log2(p);
    }
    // -0.0 for a single occupied bin.
    return h + 0.0;
}

} // namespace uhr::metrics

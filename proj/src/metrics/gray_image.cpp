#include "uhr/metrics/gray_image.hpp"

#include "uhr/common/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace uhr::metrics {

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width_ < 2 || height_ < 2)
        throw InvalidInput(fmt::format("gray image must be at least 2x2, got {}x{}", width_, height_));
    if (data_.size() != width_ * height_)
        throw InvalidInput(fmt::format("gray image data has {} values, expected {}", data_.size(),
                                       width_ * height_));
    for (double v : data_) {
        if (!std::isfinite(v) || v < 0.0 || v > 255.0)
            throw InvalidInput(fmt::format("gray value {} outside [0, 255]", v));
    }
}

GrayImage GrayImage::constant(std::size_t width, std::size_t height, double value) {
    return GrayImage(width, height, std::vector<double>(width * height, value));
}

GrayImage to_grayscale(const RgbImage& rgb) {
    if (rgb.width == 0 || rgb.height == 0) throw InvalidInput("zero-sized RGB image");
    if (rgb.data.size() != rgb.width * rgb.height * 3)
        throw InvalidInput("RGB buffer size does not match dimensions");
    std::vector<double> luma(rgb.width * rgb.height);
    for (std::size_t i = 0; i < luma.size(); ++i) {
        const auto* p = &rgb.data[3 * i];
        luma[i] = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
        // The weights sum to 1 only up to rounding; keep gray inputs exact.
        if (p[0] == p[1] && p[1] == p[2]) luma[i] = p[0];
        luma[i] = std::clamp(luma[i], 0.0, 255.0);
    }
    return GrayImage(rgb.width, rgb.height, std::move(luma));
}

namespace {

struct Tap {
    std::size_t index;
    double weight;
};

// For each output cell, the source samples it overlaps and the overlap length.
std::vector<std::vector<Tap>> box_taps(std::size_t src, std::size_t dst) {
    const double scale = static_cast<double>(src) / static_cast<double>(dst);
    std::vector<std::vector<Tap>> taps(dst);
    for (std::size_t o = 0; o < dst; ++o) {
        const double lo = o * scale;
        const double hi = (o + 1 == dst) ? static_cast<double>(src) : (o + 1) * scale;
        auto first = static_cast<std::size_t>(std::floor(lo));
        for (std::size_t s = first; s < src && static_cast<double>(s) < hi; ++s) {
            const double w = std::min(hi, s + 1.0) - std::max(lo, static_cast<double>(s));
            if (w > 0.0) taps[o].push_back({s, w});
        }
    }
    return taps;
}

// Weighted mean anchored at the first sample, which makes a constant window
// reproduce its value exactly.
template <typename Get>
double box_mean(const std::vector<Tap>& taps, Get get) {
    const double anchor = get(taps.front().index);
    double acc = 0.0;
    double total = 0.0;
    for (const auto& t : taps) {
        acc += t.weight * (get(t.index) - anchor);
        total += t.weight;
    }
    return std::clamp(anchor + acc / total, 0.0, 255.0);
}

} // namespace

GrayImage downsample(const GrayImage& img, std::size_t target_long_side) {
    if (target_long_side < 2) throw InvalidInput("downsample target must be at least 2");
    const std::size_t w = img.width();
    const std::size_t h = img.height();
    if (img.long_side() <= target_long_side) return img;

    const double ratio = static_cast<double>(target_long_side) / static_cast<double>(img.long_side());
    auto scaled = [&](std::size_t side) {
        auto s = static_cast<std::size_t>(std::llround(side * ratio));
        return std::clamp<std::size_t>(s, std::min<std::size_t>(2, side), target_long_side);
    };
    const std::size_t ow = (w >= h) ? target_long_side : scaled(w);
    const std::size_t oh = (h > w) ? target_long_side : scaled(h);

    const auto xtaps = box_taps(w, ow);
    const auto ytaps = box_taps(h, oh);

    std::vector<double> rows(ow * h);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < ow; ++x)
            rows[y * ow + x] = box_mean(xtaps[x], [&](std::size_t s) { return img(s, y); });

    std::vector<double> out(ow * oh);
    for (std::size_t y = 0; y < oh; ++y)
        for (std::size_t x = 0; x < ow; ++x)
            out[y * ow + x] = box_mean(ytaps[y], [&](std::size_t s) { return rows[s * ow + x]; });

    return GrayImage(ow, oh, std::move(out));
}

} // namespace uhr::metrics

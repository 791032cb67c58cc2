#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace uhr::metrics {

// Luminance image, row-major, values in [0, 255] at double precision.
// Both sides are at least 2 pixels.
class GrayImage {
public:
    // Throws InvalidInput if the shape or any value violates the invariants.
    GrayImage(std::size_t width, std::size_t height, std::vector<double> data);

    static GrayImage constant(std::size_t width, std::size_t height, double value);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t long_side() const noexcept { return width_ > height_ ? width_ : height_; }

    double operator()(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }
    std::span<const double> values() const noexcept { return data_; }

    bool operator==(const GrayImage&) const = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<double> data_;
};

// Interleaved 8-bit RGB, row-major.
struct RgbImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> data;
};

// BT.601 luma, no rounding.
GrayImage to_grayscale(const RgbImage& rgb);

// Box (area-average) resampling to a long side of `target_long_side`,
// keeping the aspect ratio. Images already small enough are returned as-is.
// The short side never drops below 2 pixels.
GrayImage downsample(const GrayImage& img, std::size_t target_long_side);

} // namespace uhr::metrics

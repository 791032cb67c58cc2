#include "uhr/toy/texture.hpp"

#include "uhr/common/error.hpp"
#include "uhr/common/rng.hpp"
#include "uhr/freq/swfr.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace uhr::toy {

double high_band_fraction(const Tensor2D& x) {
    const auto e = freq::band_energies(x, {0.0, 0.5, 1.0});
    const double total = e[0] + e[1];
    return total > 0.0 ? e[1] / total : 0.0;
}

Texture gen_texture(const TextureSpec& spec) {
    if (spec.size < 4) throw InvalidInput("texture size must be at least 4");
    if (spec.min_blobs < 0 || spec.max_blobs < spec.min_blobs || spec.min_gratings < 0 ||
        spec.max_gratings < spec.min_gratings || spec.max_attempts < 1)
        throw InvalidInput("invalid texture component counts");

    const std::size_t n = spec.size;
    const double dn = static_cast<double>(n);
    Rng rng(spec.seed);

    Tensor2D low(n, n);
    const auto blobs = spec.min_blobs + static_cast<int>(rng.below(spec.max_blobs - spec.min_blobs + 1));
    for (int b = 0; b < blobs; ++b) {
        const double cy = rng.uniform(0.0, dn);
        const double cx = rng.uniform(0.0, dn);
        const double sigma = rng.uniform(dn / 8.0, dn / 3.0);
        const double amp = rng.uniform(-1.0, 1.0);
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t x = 0; x < n; ++x) {
                const double d2 = (y - cy) * (y - cy) + (x - cx) * (x - cx);
                low(y, x) += amp * std::exp(-d2 / (2.0 * sigma * sigma));
            }
    }

    for (int attempt = 1; attempt <= spec.max_attempts; ++attempt) {
        Tensor2D img = low;
        const auto gratings =
            spec.min_gratings + static_cast<int>(rng.below(spec.max_gratings - spec.min_gratings + 1));
        for (int g = 0; g < gratings; ++g) {
            // Cycles per image, from a quarter to half the sampling rate.
            const double freq = rng.uniform(dn / 4.0, dn / 2.0);
            const double theta = rng.uniform(0.0, std::numbers::pi);
            const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const double amp = spec.grating_amplitude * rng.uniform(0.5, 1.0);
            const double kx = 2.0 * std::numbers::pi * freq * std::cos(theta) / dn;
            const double ky = 2.0 * std::numbers::pi * freq * std::sin(theta) / dn;
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t x = 0; x < n; ++x) img(y, x) += amp * std::cos(kx * x + ky * y + phase);
        }

        double peak = 0.0;
        for (double v : img.values()) peak = std::max(peak, std::abs(v));
        if (peak > 0.0)
            for (double& v : img.values()) v = std::clamp(v / peak, -1.0, 1.0);

        if (high_band_fraction(img) >= spec.min_high_band_fraction) return {std::move(img), attempt};
    }
    throw InvalidInput(fmt::format("texture seed {}: high-band share stayed below {} after {} attempts",
                                   spec.seed, spec.min_high_band_fraction, spec.max_attempts));
}

} // namespace uhr::toy

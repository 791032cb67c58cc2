#pragma once

#include "uhr/common/grid.hpp"

#include <cstdint>

namespace uhr::toy {

// Synthetic detail-rich texture: smooth Gaussian blobs plus sinusoidal
// gratings at a quarter of the sampling rate or above.
struct TextureSpec {
    std::size_t size = 32;
    int min_blobs = 2;
    int max_blobs = 4;
    int min_gratings = 1;
    int max_gratings = 3;
    double grating_amplitude = 1.0;
    // Share of spectral energy required at radial frequency r >= 0.5.
    double min_high_band_fraction = 0.10;
    int max_attempts = 64;
    std::uint64_t seed = 0;
};

struct Texture {
    Tensor2D image;  // values in [-1, 1]
    int attempts = 0;
};

// Deterministic in spec.seed. Gratings are redrawn until the high-band
// share is met; throws InvalidInput once max_attempts is exhausted (e.g.
// with zero grating amplitude).
Texture gen_texture(const TextureSpec& spec);

// Fraction of sum |dft2(x)|^2 at r >= 0.5.
double high_band_fraction(const Tensor2D& x);

} // namespace uhr::toy

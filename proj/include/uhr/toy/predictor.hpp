#pragma once

#include "uhr/common/grid.hpp"
#include "uhr/freq/swfr.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace uhr::toy {

inline constexpr std::size_t kKernelSide = 5;
inline constexpr std::size_t kKernelTaps = kKernelSide * kKernelSide;
inline constexpr std::size_t kTimeBins = 16;
inline constexpr std::size_t kParamCount = kKernelTaps + kTimeBins;

// Velocity predictor: one 5x5 kernel shared over time plus a scalar bias
// per uniform time bin. values = [kernel row-major (25) | bias (16)].
struct PredictorParams {
    std::array<double, kParamCount> values{};

    double& kernel(std::size_t dy, std::size_t dx) { return values[dy * kKernelSide + dx]; }
    double kernel(std::size_t dy, std::size_t dx) const { return values[dy * kKernelSide + dx]; }
    double& bias(std::size_t bin) { return values[kKernelTaps + bin]; }
    double bias(std::size_t bin) const { return values[kKernelTaps + bin]; }

    bool operator==(const PredictorParams&) const = default;
};

// Kernel ~ N(0, 0.02^2), biases 0.
PredictorParams init_params(std::uint64_t seed);

std::size_t time_bin(double t);

// v_hat(y, x) = sum_k kernel(k) z(y + ky - 2, x + kx - 2) + bias[bin(t)],
// zero outside the image.
Tensor2D predict(const PredictorParams& params, const Tensor2D& z, double t);

// One training example: clean image, noise and time.
struct FlowSample {
    Tensor2D x0;
    Tensor2D eps;
    double t = 0.5;
};

struct LossSettings {
    bool use_swfr = true;
    double lambda_freq = 0.5;
    freq::FreqRegConfig freq;
};

struct LossBreakdown {
    double total = 0.0;
    double diff = 0.0;  // velocity MSE
    double freq = 0.0;  // mean soft-weighted spectral loss (0 when SWFR is off)

    bool operator==(const LossBreakdown&) const = default;
};

struct LossGrad {
    LossBreakdown loss;
    PredictorParams grad;
};

// total = diff + lambda_freq * freq, averaged over the batch, with the
// analytic gradient. Throws NumericalError (step -1) on a non-finite loss.
LossGrad loss_and_grad(const PredictorParams& params, std::span<const FlowSample> batch,
                       const LossSettings& settings);

} // namespace uhr::toy

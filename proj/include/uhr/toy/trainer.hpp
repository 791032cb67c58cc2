#pragma once

#include "uhr/dots/beta.hpp"
#include "uhr/toy/predictor.hpp"

#include <cstdint>
#include <vector>

namespace uhr::toy {

struct TrainConfig {
    double lambda_freq = 0.5;
    freq::FreqRegConfig freq;
    dots::BetaParams beta;
    std::size_t steps = 2000;
    std::size_t batch_size = 16;
    double learning_rate = 1e-2;
    std::uint64_t seed = 42;
    bool use_dots = true;
    bool use_swfr = true;
    std::size_t image_size = 32;
};

void validate(const TrainConfig& cfg);

struct TrainResult {
    PredictorParams initial;
    PredictorParams params;
    std::vector<LossBreakdown> log;  // one entry per step, before the update
};

// Child-seed streams. Training data (textures, noise) and time draws come
// from separate streams so two runs that differ only in the time sampler see
// identical images and noise.
enum class Stream : std::uint64_t { init = 1, textures = 2, noise = 3, times = 4, eval = 5 };

// Textures and noise for one step; t is filled by the caller.
std::vector<FlowSample> make_batch(const TrainConfig& cfg, std::size_t step);

// Plain SGD. t ~ Beta(alpha, beta) with use_dots, otherwise uniform on (0, 1).
// A non-finite loss throws NumericalError carrying the step index.
TrainResult train(const TrainConfig& cfg);

// Held-out clean images and noise fields.
struct EvalSet {
    std::vector<Tensor2D> x0;
    std::vector<Tensor2D> eps;
};

EvalSet make_eval_set(std::uint64_t seed, std::size_t count, std::size_t image_size);

struct BandErrorOptions {
    std::vector<double> edges{0.0, 0.25, 0.5, 1.0};
    std::vector<double> times{0.1, 0.3, 0.5};
};

// Spectral energy of v_hat - v per radial band divided by HW, averaged over
// eval images and times. The bands sum to the spatial velocity MSE.
std::vector<double> band_error(const PredictorParams& params, const EvalSet& eval,
                               const BandErrorOptions& opts = {});

} // namespace uhr::toy

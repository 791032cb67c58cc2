#include "uhr/toy/trainer.hpp"

#include "uhr/common/error.hpp"
#include "uhr/toy/flow.hpp"
#include "uhr/toy/texture.hpp"

#include <cmath>
#include <fmt/format.h>

namespace uhr::toy {

void validate(const TrainConfig& cfg) {
    if (cfg.batch_size == 0) throw InvalidInput("batch size must be positive");
    if (!(cfg.learning_rate > 0.0) || !std::isfinite(cfg.learning_rate))
        throw InvalidInput("learning rate must be positive");
    if (!(cfg.lambda_freq >= 0.0)) throw InvalidInput("lambda_freq must be nonnegative");
    if (cfg.image_size < 4) throw InvalidInput("image size must be at least 4");
    freq::validate(cfg.freq);
    dots::validate(cfg.beta);
}

namespace {

std::uint64_t stream_seed(std::uint64_t seed, Stream s) {
    return derive_seed(seed, static_cast<std::uint64_t>(s));
}

Tensor2D noise_field(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    Tensor2D eps(n, n);
    for (double& v : eps.values()) v = rng.normal();
    return eps;
}

} // namespace

std::vector<FlowSample> make_batch(const TrainConfig& cfg, std::size_t step) {
    const std::uint64_t tex_seed = stream_seed(cfg.seed, Stream::textures);
    const std::uint64_t noise_seed = stream_seed(cfg.seed, Stream::noise);
    std::vector<FlowSample> batch(cfg.batch_size);
    for (std::size_t i = 0; i < cfg.batch_size; ++i) {
        const std::uint64_t item = step * cfg.batch_size + i;
        TextureSpec spec;
        spec.size = cfg.image_size;
        spec.seed = derive_seed(tex_seed, item);
        batch[i].x0 = gen_texture(spec).image;
        batch[i].eps = noise_field(derive_seed(noise_seed, item), cfg.image_size);
    }
    return batch;
}

TrainResult train(const TrainConfig& cfg) {
    validate(cfg);
    TrainResult result;
    result.initial = init_params(stream_seed(cfg.seed, Stream::init));
    result.params = result.initial;
    result.log.reserve(cfg.steps);

    Rng time_rng(stream_seed(cfg.seed, Stream::times));
    const LossSettings settings{cfg.use_swfr, cfg.lambda_freq, cfg.freq};

    for (std::size_t step = 0; step < cfg.steps; ++step) {
        auto batch = make_batch(cfg, step);
        for (auto& s : batch) s.t = cfg.use_dots ? dots::sample_beta(time_rng, cfg.beta) : time_rng.uniform_open();

        LossGrad lg;
        try {
            lg = loss_and_grad(result.params, batch, settings);
        } catch (const NumericalError& e) {
            throw NumericalError(static_cast<long>(step), e.what());
        }
        result.log.push_back(lg.loss);
        for (std::size_t k = 0; k < kParamCount; ++k)
            result.params.values[k] -= cfg.learning_rate * lg.grad.values[k];
    }
    return result;
}

EvalSet make_eval_set(std::uint64_t seed, std::size_t count, std::size_t image_size) {
    const std::uint64_t base = stream_seed(seed, Stream::eval);
    EvalSet set;
    set.x0.resize(count);
    set.eps.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        TextureSpec spec;
        spec.size = image_size;
        spec.seed = derive_seed(base, 2 * i);
        set.x0[i] = gen_texture(spec).image;
        set.eps[i] = noise_field(derive_seed(base, 2 * i + 1), image_size);
    }
    return set;
}

std::vector<double> band_error(const PredictorParams& params, const EvalSet& eval,
                               const BandErrorOptions& opts) {
    if (eval.x0.empty() || eval.x0.size() != eval.eps.size()) throw InvalidInput("malformed eval set");
    if (opts.times.empty()) throw InvalidInput("band_error needs at least one evaluation time");
    std::vector<double> acc(opts.edges.size() - 1, 0.0);
    for (std::size_t i = 0; i < eval.x0.size(); ++i) {
        const Tensor2D v = velocity_target(eval.x0[i], eval.eps[i]);
        for (double t : opts.times) {
            const Tensor2D vhat = predict(params, forward_diffuse(eval.x0[i], eval.eps[i], t), t);
            Tensor2D residual(v.rows(), v.cols());
            for (std::size_t p = 0; p < v.size(); ++p) residual.values()[p] = vhat.values()[p] - v.values()[p];
            const auto e = freq::band_energies(residual, opts.edges);
            for (std::size_t b = 0; b < e.size(); ++b) acc[b] += e[b] / static_cast<double>(v.size());
        }
    }
    const double n = static_cast<double>(eval.x0.size() * opts.times.size());
    for (double& a : acc) a /= n;
    return acc;
}

} // namespace uhr::toy

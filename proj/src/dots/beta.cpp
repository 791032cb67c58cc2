#include "uhr/dots/beta.hpp"

#include "uhr/common/error.hpp"
#include "uhr/dots/special.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace uhr::dots {

void validate(const BetaParams& p) {
    if (!(p.alpha > 0.0) || !(p.beta > 0.0) || !std::isfinite(p.alpha) || !std::isfinite(p.beta))
        throw InvalidInput(fmt::format("Beta shape parameters must be > 0, got ({}, {})", p.alpha, p.beta));
}

double beta_pdf(double t, const BetaParams& p) {
    validate(p);
    if (!(t > 0.0 && t < 1.0)) throw InvalidInput(fmt::format("beta_pdf: t = {} outside (0, 1)", t));
    return std::exp((p.alpha - 1.0) * std::log(t) + (p.beta - 1.0) * std::log1p(-t) -
                    ln_beta(p.alpha, p.beta));
}

double beta_cdf(double t, const BetaParams& p) {
    validate(p);
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidInput(fmt::format("beta_cdf: t = {} outside [0, 1]", t));
    return regularized_incomplete_beta(t, p.alpha, p.beta);
}

double sample_gamma(Rng& rng, double shape) {
    if (!(shape > 0.0)) throw InvalidInput("gamma shape must be > 0");
    if (shape < 1.0) {
        const double u = rng.uniform_open();
        return sample_gamma(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_open();
        if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_beta(Rng& rng, const BetaParams& p) {
    validate(p);
    double x, y;
    // Both draws can underflow to 0 for very small shapes.
    do {
        x = sample_gamma(rng, p.alpha);
        y = sample_gamma(rng, p.beta);
    } while (!(x + y > 0.0));
    constexpr double kEdge = 1e-12;
    return std::clamp(x / (x + y), kEdge, 1.0 - kEdge);
}

std::size_t map_to_discrete(double t, std::size_t num_timesteps) {
    if (num_timesteps < 1) throw InvalidInput("num_timesteps must be at least 1");
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidInput(fmt::format("timestep {} outside [0, 1]", t));
    const auto idx = static_cast<std::size_t>(std::floor(t * static_cast<double>(num_timesteps)));
    return std::min(idx, num_timesteps - 1);
}

} // namespace uhr::dots

#pragma once

#include "uhr/common/rng.hpp"

#include <cstddef>
#include <string_view>

namespace uhr::dots {

// Shape parameters of the timestep distribution. Defaults favour the data
// end of the trajectory.
struct BetaParams {
    double alpha = 2.0;
    double beta = 4.0;
};

void validate(const BetaParams& p);

// Time runs from the data (t = 0) to pure noise (t = 1):
// z_t = (1 - t) x0 + t eps.
inline constexpr std::string_view kTimestepConvention = "t=0:data,t=1:noise";

// Density on (0, 1).
double beta_pdf(double t, const BetaParams& p);

// I_t(alpha, beta) on [0, 1]; exact at both endpoints.
double beta_cdf(double t, const BetaParams& p);

// Gamma(shape, 1) by Marsaglia-Tsang rejection; shapes below 1 use the
// U^(1/shape) boost.
double sample_gamma(Rng& rng, double shape);

// X / (X + Y) with X ~ Gamma(alpha), Y ~ Gamma(beta), kept inside
// [1e-12, 1 - 1e-12].
double sample_beta(Rng& rng, const BetaParams& p);

// min(floor(t * T), T - 1); index 0 is the data end.
std::size_t map_to_discrete(double t, std::size_t num_timesteps);

} // namespace uhr::dots

#pragma once

namespace uhr::dots {

// log Gamma(x) for x > 0 (Lanczos, g = 7, 9 terms).
double ln_gamma(double x);

// log B(a, b) = ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b).
double ln_beta(double a, double b);

// Regularized incomplete beta I_x(a, b) for x in [0, 1], evaluated with the
// modified Lentz continued fraction on whichever tail converges faster.
double regularized_incomplete_beta(double x, double a, double b);

} // namespace uhr::dots

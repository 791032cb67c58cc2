#include "uhr/dots/special.hpp"

#include "uhr/common/error.hpp"

#include <array>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

namespace uhr::dots {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

} // namespace

double ln_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw InvalidInput(fmt::format("ln_gamma requires x > 0, got {}", x));
    if (x == 1.0 || x == 2.0) return 0.0;
    if (x < 0.5) {
        // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - ln_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double a = kLanczosCoef[0];
    const double t = z + kLanczosG + 0.5;
    for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) a += kLanczosCoef[i] / (z + i);
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double ln_beta(double a, double b) { return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b); }

namespace {

double beta_continued_fraction(double x, double a, double b) {
    constexpr int kMaxIter = 10000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw NumericalError(-1, fmt::format("incomplete beta continued fraction did not converge "
                                         "(x = {}, a = {}, b = {})", x, a, b));
}

} // namespace

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw InvalidInput("incomplete beta requires a, b > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput(fmt::format("incomplete beta: x = {} outside [0, 1]", x));
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front = a * std::log(x) + b * std::log1p(-x) - ln_beta(a, b);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
    return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

} // namespace uhr::dots

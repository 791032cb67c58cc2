#include "fixtures.hpp"

#include "uhr/common/error.hpp"
#include "uhr/dots/beta.hpp"
#include "uhr/dots/special.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace uhr;
using namespace uhr::dots;

namespace {

// The ablation grid plus (1, 1).
const std::vector<BetaParams> kGrid{{1, 1}, {1, 4}, {2, 4}, {3, 4}, {2, 5}, {2, 3}};

double pdf_closed(double t, const BetaParams& p) {
    return beta_pdf(std::clamp(t, 1e-300, 1.0 - 1e-16), p);
}

std::vector<double> draw(const BetaParams& p, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(n);
    for (double& t : v) t = sample_beta(rng, p);
    return v;
}

double ks_distance(std::vector<double> samples, const BetaParams& p) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = beta_cdf(samples[i], p);
        d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
    }
    return d;
}

} // namespace

TEST_CASE("ln_gamma agrees with the standard library") {
    for (double x : {1e-3, 0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 57.3, 170.0}) {
        CHECK(ln_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
    }
    CHECK(ln_gamma(1.0) == 0.0);
    CHECK(ln_gamma(2.0) == 0.0);
    CHECK(ln_gamma(0.5) == doctest::Approx(0.57236494292470042).epsilon(1e-14));
    CHECK(ln_beta(2.0, 4.0) == doctest::Approx(std::log(1.0 / 20.0)).epsilon(1e-14));
    CHECK_THROWS_AS(ln_gamma(0.0), InvalidInput);
}

TEST_CASE("pdf pinned values") {
    CHECK(beta_pdf(0.25, {2, 4}) == doctest::Approx(2.109375).epsilon(1e-13));
    CHECK(beta_cdf(0.25, {2, 4}) == doctest::Approx(0.3671875).epsilon(1e-13));
    CHECK(beta_cdf(0.5, {2, 4}) == doctest::Approx(0.8125).epsilon(1e-13));
    CHECK(beta_pdf(0.3, {1, 1}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(beta_cdf(0.0, {2, 4}) == 0.0);
    CHECK(beta_cdf(1.0, {2, 4}) == 1.0);
    CHECK_THROWS_AS(beta_pdf(0.0, {2, 4}), InvalidInput);
    CHECK_THROWS_AS(beta_cdf(1.5, {2, 4}), InvalidInput);
    CHECK_THROWS_AS(validate(BetaParams{0.0, 4.0}), InvalidInput);
    CHECK(kTimestepConvention == "t=0:data,t=1:noise");
}

TEST_CASE("pdf integrates to one over the grid") {
    for (const BetaParams& p : kGrid) {
        const double area = uhr::testing::simpson([&](double t) { return pdf_closed(t, p); }, 0.0, 1.0, 10000);
        CHECK(std::abs(area - 1.0) < 1e-6);
    }
}

TEST_CASE("cdf matches quadrature of the pdf") {
    for (const BetaParams& p : kGrid) {
        for (double x : {0.05, 0.25, 0.5, 0.8, 0.97}) {
            const double q = uhr::testing::simpson([&](double t) { return pdf_closed(t, p); }, 0.0, x, 20000);
            CHECK(std::abs(beta_cdf(x, p) - q) < 1e-8);
        }
        // Symmetry I_x(a, b) = 1 - I_{1-x}(b, a).
        for (double x : {0.1, 0.4, 0.9})
            CHECK(beta_cdf(x, p) == doctest::Approx(1.0 - beta_cdf(1.0 - x, {p.beta, p.alpha})).epsilon(1e-13));
    }
}

TEST_CASE("samples follow the distribution") {
    for (const BetaParams& p : kGrid) {
        const auto s = draw(p, 100000, 42);
        CHECK(ks_distance(s, p) < 0.01);
        double mean = 0.0;
        for (double t : s) {
            CHECK(t >= 1e-12);
            CHECK(t <= 1.0 - 1e-12);
            mean += t;
        }
        mean /= s.size();
        const double a = p.alpha, b = p.beta;
        const double mu = a / (a + b);
        const double var = a * b / ((a + b) * (a + b) * (a + b + 1));
        CHECK(std::abs(mean - mu) < 3.0 * std::sqrt(var / s.size()) + 1e-12);
    }
}

TEST_CASE("default shape favours the data end") {
    const auto s = draw(BetaParams{}, 100000, 7);
    const double below = static_cast<double>(std::count_if(s.begin(), s.end(), [](double t) { return t < 0.5; }));
    CHECK(below / s.size() > 0.5);
    CHECK(below / s.size() == doctest::Approx(0.8125).epsilon(0.01));
}

TEST_CASE("sampling is deterministic per seed") {
    CHECK(draw({2, 4}, 100, 5) == draw({2, 4}, 100, 5));
    CHECK(draw({2, 4}, 100, 5) != draw({2, 4}, 100, 6));
}

TEST_CASE("gamma sampler moments") {
    for (double shape : {0.3, 1.0, 2.5, 9.0}) {
        Rng rng(11);
        double m = 0.0;
        const int n = 50000;
        for (int i = 0; i < n; ++i) m += sample_gamma(rng, shape);
        m /= n;
        CHECK(std::abs(m - shape) < 4.0 * std::sqrt(shape / n));
    }
}

TEST_CASE("mapping to discrete steps") {
    CHECK(map_to_discrete(0.0, 1000) == 0);
    CHECK(map_to_discrete(0.2499, 1000) == 249);
    CHECK(map_to_discrete(1.0, 1000) == 999);
    CHECK(map_to_discrete(0.5, 1) == 0);
    CHECK_THROWS_AS(map_to_discrete(0.5, 0), InvalidInput);
    CHECK_THROWS_AS(map_to_discrete(-0.1, 10), InvalidInput);
}

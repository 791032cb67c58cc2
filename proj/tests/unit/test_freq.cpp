#include "fixtures.hpp"

#include "uhr/common/error.hpp"
#include "uhr/freq/dft.hpp"
#include "uhr/freq/swfr.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace uhr;
using namespace uhr::freq;
using uhr::testing::random_tensor;

namespace {

double mse(const Tensor2D& a, const Tensor2D& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a.values()[i] - b.values()[i]) * (a.values()[i] - b.values()[i]);
    return s / static_cast<double>(a.size());
}

double max_abs_diff(const Tensor2D& a, const Tensor2D& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

} // namespace

TEST_CASE("dft of a constant is a single DC bin") {
    for (auto [h, w] : {std::pair{4, 4}, {8, 6}, {5, 7}}) {
        const Tensor2D x(h, w, 3.0);
        const Spectrum s = dft2(x);
        for (std::size_t u = 0; u < s.rows(); ++u)
            for (std::size_t v = 0; v < s.cols(); ++v) {
                if (u == static_cast<std::size_t>(h / 2) && v == static_cast<std::size_t>(w / 2))
                    CHECK(s(u, v).real() == doctest::Approx(3.0 * std::sqrt(double(h * w))));
                else
                    CHECK(std::abs(s(u, v)) < 1e-12);
            }
    }
}

TEST_CASE("dft matches direct summation") {
    for (auto [h, w] : {std::pair{8, 8}, {6, 10}, {5, 3}, {16, 4}}) {
        const Tensor2D x = random_tensor(h, w, h * 31 + w);
        const Spectrum a = dft2(x);
        const Spectrum b = uhr::testing::dft2_oracle(x);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a.values()[i] - b.values()[i]) < 1e-10);
    }
}

TEST_CASE("a cosine lands on its two centred bins") {
    const std::size_t n = 16;
    Tensor2D x(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) x(r, c) = std::cos(2.0 * std::numbers::pi * 3.0 * c / n);
    const Spectrum s = dft2(x);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            const bool peak = u == n / 2 && (v == n / 2 + 3 || v == n / 2 - 3);
            if (peak)
                CHECK(s(u, v).real() == doctest::Approx(n / 2.0));
            else
                CHECK(std::abs(s(u, v)) < 1e-10);
        }
}

TEST_CASE("inverse round trip and parseval") {
    for (std::size_t n : {2, 4, 8, 16, 32, 64}) {
        const Tensor2D x = random_tensor(n, n + (n > 2 ? 2 : 0), n);
        const Spectrum s = dft2(x);
        CHECK(max_abs_diff(idft2(s), x) < 1e-9);
        double e_space = 0.0, e_freq = 0.0;
        for (double v : x.values()) e_space += v * v;
        for (auto z : s.values()) e_freq += std::norm(z);
        CHECK(e_freq == doctest::Approx(e_space).epsilon(1e-12));
    }
}

TEST_CASE("spectrum of a real field is conjugate symmetric") {
    const std::size_t n = 8;
    const Spectrum s = dft2(random_tensor(n, n, 5));
    // Centred index k maps to bin k + n/2; -k wraps modulo n.
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            const std::size_t uu = (n - u) % n, vv = (n - v) % n;
            CHECK(std::abs(s(u, v) - std::conj(s(uu, vv))) < 1e-12);
        }
}

TEST_CASE("idft2 refuses non-hermitian spectra") {
    Spectrum s(4, 4);
    s(1, 1) = {0.0, 1.0};
    CHECK_THROWS_AS(idft2(s), NumericalError);
    CHECK_NOTHROW(idft2_complex(s));
    CHECK_THROWS_AS(dft2(Tensor2D(1, 8)), InvalidInput);
}

TEST_CASE("radial field") {
    const Tensor2D r = radial_field(4, 4);
    CHECK(r(2, 2) == 0.0);
    CHECK(r(0, 0) == 1.0);
    CHECK(r(0, 2) == doctest::Approx(2.0 / std::sqrt(8.0)));
    const Tensor2D odd = radial_field(5, 7);
    double mx = 0.0;
    for (double v : odd.values()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        mx = std::max(mx, v);
    }
    CHECK(mx == 1.0);
    CHECK(odd(2, 3) == 0.0);
}

TEST_CASE("soft weight endpoints are exact") {
    for (double lambda : {0.0, 0.5, 1.0, 2.0})
        for (double gamma : {1.0, 4.0, 8.0}) {
            const FreqRegConfig cfg{lambda, gamma};
            CHECK(soft_weight(0.0, cfg) == 1.0);
            CHECK(soft_weight(1.0, cfg) == 1.0 + lambda);
            double prev = 0.0;
            for (int i = 0; i <= 100; ++i) {
                const double w = soft_weight(i / 100.0, cfg);
                CHECK(w >= prev);
                prev = w;
            }
        }
    CHECK(soft_weight(0.5, FreqRegConfig{1.0, 1.0}) == doctest::Approx(1.3775406687981455).epsilon(1e-14));
    CHECK_THROWS_AS(soft_weight(1.5, FreqRegConfig{}), InvalidInput);
    CHECK_THROWS_AS(validate(FreqRegConfig{-1.0, 4.0}), InvalidInput);
    CHECK_THROWS_AS(validate(FreqRegConfig{1.0, 0.0}), InvalidInput);
}

TEST_CASE("weighted loss matches direct evaluation") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const std::size_t h = 6 + 2 * seed, w = 8;
        const Tensor2D x = random_tensor(h, w, seed), y = random_tensor(h, w, seed + 100);
        for (auto [lambda, gamma] : {std::pair{1.0, 4.0}, {0.5, 1.0}, {2.0, 8.0}}) {
            const double got = freq_loss(x, y, FreqRegConfig{lambda, gamma});
            CHECK(got == doctest::Approx(uhr::testing::freq_loss_oracle(x, y, lambda, gamma)).epsilon(1e-10));
        }
    }
}

TEST_CASE("zero strength reduces to mse") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Tensor2D x = random_tensor(16, 16, seed), y = random_tensor(16, 16, seed + 1000);
        CHECK(std::abs(freq_loss(x, y, FreqRegConfig{0.0, 4.0}) - mse(x, y)) < 1e-9);
    }
}

TEST_CASE("loss emphasizes high frequencies") {
    // Same spatial energy, one low-frequency and one high-frequency error.
    const std::size_t n = 16;
    Tensor2D zero(n, n), low(n, n), high(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            low(r, c) = std::cos(2.0 * std::numbers::pi * c / n);
            high(r, c) = std::cos(2.0 * std::numbers::pi * 7.0 * c / n);
        }
    const FreqRegConfig cfg{1.0, 4.0};
    CHECK(mse(low, zero) == doctest::Approx(mse(high, zero)));
    CHECK(freq_loss(high, zero, cfg) > freq_loss(low, zero, cfg));
}

TEST_CASE("loss gradient matches finite differences") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t h = 4 + seed % 3, w = 6;
        const Tensor2D x = random_tensor(h, w, seed), y = random_tensor(h, w, seed + 50);
        const FreqRegConfig cfg{0.25 * (seed % 5), 1.0 + seed};
        const Tensor2D g = freq_loss_grad(x, y, cfg);
        auto f = [&](const std::vector<double>& v) { return freq_loss(Tensor2D(h, w, v), y, cfg); };
        const auto fd = uhr::testing::central_differences(f, std::vector<double>(x.values().begin(), x.values().end()), 1e-5);
        CHECK(uhr::testing::max_relative_error(std::vector<double>(g.values().begin(), g.values().end()), fd) < 1e-5);
        const LossAndGrad lg = freq_loss_and_grad(x, y, cfg);
        CHECK(lg.loss == doctest::Approx(freq_loss(x, y, cfg)).epsilon(1e-14));
        CHECK(max_abs_diff(lg.grad, g) < 1e-14);
    }
}

TEST_CASE("band energies partition the spectrum") {
    const Tensor2D x = random_tensor(12, 12, 3);
    double total = 0.0;
    for (double v : x.values()) total += v * v;
    const auto bands = band_energies(x, {0.0, 0.25, 0.5, 1.0});
    REQUIRE(bands.size() == 3);
    CHECK(bands[0] + bands[1] + bands[2] == doctest::Approx(total).epsilon(1e-12));
    CHECK_THROWS_AS(band_energies(x, {0.1, 1.0}), InvalidInput);
    CHECK_THROWS_AS(band_energies(x, {0.0, 0.5, 0.5, 1.0}), InvalidInput);
    CHECK_THROWS_AS(freq_loss(x, random_tensor(12, 10, 1), FreqRegConfig{}), InvalidInput);
}

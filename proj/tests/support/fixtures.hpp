#pragma once

// Shared helpers for the unit and acceptance suites: scratch directories,
// synthetic images, and brute-force oracles that deliberately avoid the
// library code paths they check.

#include "uhr/common/grid.hpp"
#include "uhr/common/rng.hpp"
#include "uhr/curation/record.hpp"
#include "uhr/metrics/glcm.hpp"
#include "uhr/metrics/gray_image.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace uhr::testing {

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("uhr-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& s) const { return path_ / s; }

private:
    std::filesystem::path path_;
};

inline metrics::GrayImage random_gray(std::size_t w, std::size_t h, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(w * h);
    for (double& x : v) x = rng.uniform(0.0, 255.0);
    return metrics::GrayImage(w, h, std::move(v));
}

inline metrics::GrayImage gray_from(std::size_t w, std::size_t h,
                                    const std::function<double(std::size_t, std::size_t)>& f) {
    std::vector<double> v(w * h);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) v[y * w + x] = f(x, y);
    return metrics::GrayImage(w, h, std::move(v));
}

inline Tensor2D random_tensor(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Rng rng(seed);
    Tensor2D t(rows, cols);
    for (double& v : t.values()) v = rng.normal();
    return t;
}

// Random RGB noise blended with a smooth gradient; `detail` in [0, 1]
// scales the noise amplitude.
inline metrics::RgbImage textured_rgb(std::size_t w, std::size_t h, std::uint64_t seed, double detail = 1.0) {
    Rng rng(seed);
    metrics::RgbImage img{w, h, std::vector<std::uint8_t>(w * h * 3)};
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c) {
                const double base = 128.0 + 60.0 * std::sin(0.05 * x + 0.07 * y + c);
                const double v = base + detail * rng.uniform(-120.0, 120.0);
                img.data[(y * w + x) * 3 + c] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
            }
    return img;
}

// ------------------------------------------------------------------ oracles

// GLCM by visiting every ordered pixel pair and keeping those whose
// displacement equals the offset.
inline Grid<double> glcm_oracle(const metrics::IndexedImage& img, metrics::Offset off) {
    const std::size_t n = static_cast<std::size_t>(img.levels);
    Grid<double> m(n, n);
    const long h = static_cast<long>(img.pixels.rows());
    const long w = static_cast<long>(img.pixels.cols());
    double pairs = 0.0;
    for (long y = 0; y < h; ++y)
        for (long x = 0; x < w; ++x)
            for (long y2 = 0; y2 < h; ++y2)
                for (long x2 = 0; x2 < w; ++x2) {
                    if (x2 - x != off.dx || y2 - y != off.dy) continue;
                    const auto a = img.pixels(y, x);
                    const auto b = img.pixels(y2, x2);
                    m(a, b) += 1.0;
                    m(b, a) += 1.0;
                    pairs += 2.0;
                }
    for (double& v : m.values()) v /= pairs;
    return m;
}

// Features via raw moments (E[ij] - mu_i mu_j), a different algebraic route
// from the centred sums used by the library.
inline metrics::GlcmFeatures glcm_features_oracle(const Grid<double>& p) {
    metrics::GlcmFeatures f;
    long double mi = 0, mj = 0, ii = 0, jj = 0, ij = 0;
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) {
            const long double v = p(i, j);
            f.contrast += static_cast<double>(v * (i - static_cast<long double>(j)) * (i - static_cast<long double>(j)));
            if (v > 0) f.entropy -= static_cast<double>(v * std::log(v));
            mi += v * i;
            mj += v * j;
            ii += v * i * i;
            jj += v * j * j;
            ij += v * i * j;
        }
    const long double vi = ii - mi * mi;
    const long double vj = jj - mj * mj;
    if (vi <= 1e-18L || vj <= 1e-18L) {
        f.degenerate = true;
        f.correlation = 0.0;
    } else {
        f.correlation = static_cast<double>((ij - mi * mj) / std::sqrt(vi * vj));
    }
    return f;
}

// Centred orthonormal DFT by direct quadruple summation.
inline Spectrum dft2_oracle(const Tensor2D& x) {
    const std::size_t h = x.rows(), w = x.cols();
    Spectrum s(h, w);
    const long cu = static_cast<long>(h / 2), cv = static_cast<long>(w / 2);
    for (std::size_t u = 0; u < h; ++u)
        for (std::size_t v = 0; v < w; ++v) {
            const double ku = static_cast<double>(static_cast<long>(u) - cu);
            const double kv = static_cast<double>(static_cast<long>(v) - cv);
            std::complex<long double> acc = 0;
            for (std::size_t r = 0; r < h; ++r)
                for (std::size_t c = 0; c < w; ++c) {
                    const long double ang = -2.0L * std::numbers::pi_v<long double> * (ku * r / h + kv * c / w);
                    acc += static_cast<long double>(x(r, c)) * std::complex<long double>(std::cos(ang), std::sin(ang));
                }
            s(u, v) = std::complex<double>(acc) / std::sqrt(static_cast<double>(h * w));
        }
    return s;
}

// Weighted spectral loss from the direct DFT and an independently coded
// radial weight.
inline double freq_loss_oracle(const Tensor2D& x, const Tensor2D& y, double lambda, double gamma) {
    const Spectrum xs = dft2_oracle(x), ys = dft2_oracle(y);
    const std::size_t h = x.rows(), w = x.cols();
    const double cu = static_cast<double>(h / 2), cv = static_cast<double>(w / 2);
    double rmax = 0.0;
    for (double u : {0.0, h - 1.0})
        for (double v : {0.0, w - 1.0}) rmax = std::max(rmax, std::sqrt((u - cu) * (u - cu) + (v - cv) * (v - cv)));
    double acc = 0.0;
    for (std::size_t u = 0; u < h; ++u)
        for (std::size_t v = 0; v < w; ++v) {
            const double r = std::sqrt((u - cu) * (u - cu) + (v - cv) * (v - cv)) / rmax;
            const double wt = 1.0 + lambda * (std::exp(gamma * r) - 1.0) / (std::exp(gamma) - 1.0);
            acc += wt * wt * std::norm(xs(u, v) - ys(u, v));
        }
    return acc / static_cast<double>(h * w);
}

// Central differences of f at x along every coordinate.
inline std::vector<double> central_differences(const std::function<double(const std::vector<double>&)>& f,
                                               std::vector<double> x, double step) {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double keep = x[i];
        x[i] = keep + step;
        const double up = f(x);
        x[i] = keep - step;
        const double down = f(x);
        x[i] = keep;
        g[i] = (up - down) / (2.0 * step);
    }
    return g;
}

// max_i |a_i - b_i| / max(|a_i|, |b_i|, floor). The floor keeps entries that
// are zero up to rounding from dominating the ratio.
inline double max_relative_error(const std::vector<double>& a, const std::vector<double>& b, double floor = 1e-6) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]) / std::max({std::abs(a[i]), std::abs(b[i]), floor}));
    return worst;
}

// Composite Simpson on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t panels) {
    const double h = (b - a) / static_cast<double>(panels);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Selection by sorting, slicing and set intersection, written without the
// library's ranking code.
struct SelectionOracle {
    std::set<std::string> S, SG, SE, SA, selected;
};

inline SelectionOracle selection_oracle(const std::vector<curation::ImageRecord>& records,
                                        const curation::SelectionConfig& cfg) {
    SelectionOracle o;
    std::vector<const curation::ImageRecord*> s;
    for (const auto& r : records) {
        if (!r.metrics) continue;
        if ((r.width + r.height) / 2.0 >= cfg.min_avg_resolution && r.metrics->laplacian_var >= cfg.laplacian_min &&
            r.metrics->sobel_edge_density >= cfg.sobel_density_min) {
            s.push_back(&r);
            o.S.insert(r.path);
        }
    }
    // ceil(f n) in exact rational arithmetic for f given as a double with a
    // short decimal expansion.
    const auto keep = static_cast<std::size_t>(std::llround(std::ceil(std::round(cfg.top_fraction * 1e6) * s.size() / 1e6)));
    auto top = [&](auto value, std::set<std::string>& out) {
        std::vector<std::pair<double, std::string>> v;
        for (const auto* r : s) {
            const auto x = value(*r);
            if (x) v.emplace_back(-*x, r->path);
        }
        std::sort(v.begin(), v.end());
        for (std::size_t i = 0; i < std::min(keep, v.size()); ++i) out.insert(v[i].second);
    };
    top([](const curation::ImageRecord& r) { return std::optional(r.metrics->glcm_score); }, o.SG);
    top([](const curation::ImageRecord& r) { return std::optional(r.metrics->shannon_entropy); }, o.SE);
    top([](const curation::ImageRecord& r) { return r.metrics->aesthetic; }, o.SA);
    std::set<std::string> ge;
    std::set_intersection(o.SG.begin(), o.SG.end(), o.SE.begin(), o.SE.end(), std::inserter(ge, ge.end()));
    std::set_intersection(ge.begin(), ge.end(), o.SA.begin(), o.SA.end(), std::inserter(o.selected, o.selected.end()));
    return o;
}

// 64 records with controlled metrics: duplicated scores force tie-breaks,
// some records fail each preliminary threshold, and a few lack aesthetics.
inline std::vector<curation::ImageRecord> controlled_corpus(std::size_t n = 64, std::uint64_t seed = 7) {
    Rng rng(seed);
    std::vector<curation::ImageRecord> out;
    for (std::size_t i = 0; i < n; ++i) {
        curation::ImageRecord r;
        r.path = "img_" + std::string(i < 10 ? "0" : "") + std::to_string(i) + ".png";
        r.width = 3000 + 200 * (i % 7);
        r.height = (i % 9 == 0) ? 2000 : 3000 + 100 * (i % 5);
        metrics::MetricVector m;
        m.laplacian_var = (i % 11 == 3) ? 50.0 : 100.0 + 10.0 * rng.below(50);
        m.sobel_edge_density = (i % 13 == 5) ? 0.01 : 0.05 + 0.01 * rng.below(40);
        // Coarse grids produce many ties.
        m.glcm_score = 1.0 + 0.5 * static_cast<double>(rng.below(8));
        m.shannon_entropy = 4.0 + 0.25 * static_cast<double>(rng.below(12));
        if (i % 17 != 4) m.aesthetic = 3.0 + 0.5 * static_cast<double>(rng.below(10));
        curation::round_to_manifest_precision(m);
        r.metrics = m;
        out.push_back(std::move(r));
    }
    // Deliberately unsorted input.
    std::reverse(out.begin(), out.end());
    return out;
}

} // namespace uhr::testing

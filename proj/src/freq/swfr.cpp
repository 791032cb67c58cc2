#include "uhr/freq/swfr.hpp"

#include "uhr/common/error.hpp"
#include "uhr/freq/dft.hpp"

#include <cmath>
#include <fmt/format.h>

namespace uhr::freq {

void validate(const FreqRegConfig& cfg) {
    if (!(cfg.gamma > 0.0) || !std::isfinite(cfg.gamma))
        throw InvalidInput(fmt::format("soft weight steepness gamma must be > 0, got {}", cfg.gamma));
    if (!(cfg.lambda >= 0.0) || !std::isfinite(cfg.lambda))
        throw InvalidInput(fmt::format("soft weight strength lambda must be >= 0, got {}", cfg.lambda));
}

double soft_weight(double r, const FreqRegConfig& cfg) {
    validate(cfg);
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidInput(fmt::format("radius {} outside [0, 1]", r));
    return 1.0 + cfg.lambda * std::expm1(cfg.gamma * r) / std::expm1(cfg.gamma);
}

Tensor2D weight_field(std::size_t rows, std::size_t cols, const FreqRegConfig& cfg) {
    Tensor2D w = radial_field(rows, cols);
    for (double& v : w.values()) v = soft_weight(v, cfg);
    return w;
}

namespace {

void require_same_shape(const Tensor2D& x, const Tensor2D& y) {
    if (!x.same_shape(y))
        throw InvalidInput(fmt::format("shape mismatch: {}x{} vs {}x{}", x.rows(), x.cols(),
                                       y.rows(), y.cols()));
}

} // namespace

LossAndGrad freq_loss_and_grad(const Tensor2D& x, const Tensor2D& y, const FreqRegConfig& cfg) {
    require_same_shape(x, y);
    const Tensor2D w = weight_field(x.rows(), x.cols(), cfg);
    // Transform the residual once; dft2 is linear.
    Tensor2D diff(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.size(); ++i) diff.values()[i] = x.values()[i] - y.values()[i];
    Spectrum d = dft2(diff);

    const double n = static_cast<double>(x.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double wi = w.values()[i];
        acc += std::norm(wi * d.values()[i]);
        d.values()[i] *= wi * wi;
    }

    LossAndGrad out{acc / n, idft2(d)};
    for (double& g : out.grad.values()) g *= 2.0 / n;
    return out;
}

double freq_loss(const Tensor2D& x, const Tensor2D& y, const FreqRegConfig& cfg) {
    require_same_shape(x, y);
    const Tensor2D w = weight_field(x.rows(), x.cols(), cfg);
    const Spectrum xs = dft2(x);
    const Spectrum ys = dft2(y);
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        acc += std::norm(w.values()[i] * (xs.values()[i] - ys.values()[i]));
    return acc / static_cast<double>(x.size());
}

Tensor2D freq_loss_grad(const Tensor2D& x, const Tensor2D& y, const FreqRegConfig& cfg) {
    return freq_loss_and_grad(x, y, cfg).grad;
}

std::vector<double> band_energies(const Tensor2D& x, const std::vector<double>& edges) {
    if (edges.size() < 2 || edges.front() != 0.0 || edges.back() != 1.0)
        throw InvalidInput("band edges must start at 0 and end at 1");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1])) throw InvalidInput("band edges must be increasing");

    const Spectrum s = dft2(x);
    const Tensor2D r = radial_field(x.rows(), x.cols());
    std::vector<double> energy(edges.size() - 1, 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double ri = r.values()[i];
        std::size_t b = 0;
        while (b + 2 < edges.size() && ri >= edges[b + 1]) ++b;
        energy[b] += std::norm(s.values()[i]);
    }
    return energy;
}

} // namespace uhr::freq

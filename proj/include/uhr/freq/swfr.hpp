#pragma once

#include "uhr/common/grid.hpp"

#include <vector>

namespace uhr::freq {

// Soft frequency weighting: strength lambda >= 0, steepness gamma > 0.
struct FreqRegConfig {
    double lambda = 1.0;
    double gamma = 4.0;
};

void validate(const FreqRegConfig& cfg);

// w(r) = 1 + lambda * (exp(gamma r) - 1) / (exp(gamma) - 1), r in [0, 1].
double soft_weight(double r, const FreqRegConfig& cfg);

// soft_weight applied to radial_field(rows, cols).
Tensor2D weight_field(std::size_t rows, std::size_t cols, const FreqRegConfig& cfg);

// (1/HW) * sum |w * (dft2(x) - dft2(y))|^2.
double freq_loss(const Tensor2D& x, const Tensor2D& y, const FreqRegConfig& cfg);

// Gradient of freq_loss with respect to x.
Tensor2D freq_loss_grad(const Tensor2D& x, const Tensor2D& y, const FreqRegConfig& cfg);

// Loss and gradient sharing one pair of forward transforms.
struct LossAndGrad {
    double loss = 0.0;
    Tensor2D grad;
};
LossAndGrad freq_loss_and_grad(const Tensor2D& x, const Tensor2D& y, const FreqRegConfig& cfg);

// Spectral energy sum |dft2(x)|^2 accumulated per radial band. `edges` are
// ascending band boundaries starting at 0 and ending at 1; band b covers
// [edges[b], edges[b+1]), and the last band also includes r = 1.
std::vector<double> band_energies(const Tensor2D& x, const std::vector<double>& edges);

} // namespace uhr::freq

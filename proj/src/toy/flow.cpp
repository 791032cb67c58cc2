#include "uhr/toy/flow.hpp"

#include "uhr/common/error.hpp"

#include <fmt/format.h>

namespace uhr::toy {

namespace {

void require_same_shape(const Tensor2D& a, const Tensor2D& b) {
    if (!a.same_shape(b))
        throw InvalidInput(fmt::format("shape mismatch: {}x{} vs {}x{}", a.rows(), a.cols(), b.rows(), b.cols()));
}

} // namespace

Tensor2D forward_diffuse(const Tensor2D& x0, const Tensor2D& eps, double t) {
    require_same_shape(x0, eps);
    if (!(t > 0.0 && t < 1.0)) throw InvalidInput(fmt::format("t = {} outside (0, 1)", t));
    Tensor2D z(x0.rows(), x0.cols());
    for (std::size_t i = 0; i < z.size(); ++i)
        z.values()[i] = (1.0 - t) * x0.values()[i] + t * eps.values()[i];
    return z;
}

Tensor2D velocity_target(const Tensor2D& x0, const Tensor2D& eps) {
    require_same_shape(x0, eps);
    Tensor2D v(x0.rows(), x0.cols());
    for (std::size_t i = 0; i < v.size(); ++i) v.values()[i] = eps.values()[i] - x0.values()[i];
    return v;
}

} // namespace uhr::toy

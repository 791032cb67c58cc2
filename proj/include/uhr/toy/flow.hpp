#pragma once

#include "uhr/common/grid.hpp"

namespace uhr::toy {

// Rectified-flow interpolant z_t = (1 - t) x0 + t eps, t in (0, 1).
Tensor2D forward_diffuse(const Tensor2D& x0, const Tensor2D& eps, double t);

// Constant velocity dz_t/dt = eps - x0.
Tensor2D velocity_target(const Tensor2D& x0, const Tensor2D& eps);

} // namespace uhr::toy

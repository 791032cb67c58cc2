#pragma once

#include "uhr/common/grid.hpp"

namespace uhr::freq {

// Orthonormal 2-D DFT (both directions scaled by 1/sqrt(HW)) with the zero
// frequency moved to (H/2, W/2). Parseval holds exactly up to rounding.
Spectrum dft2(const Tensor2D& x);

// Inverse of dft2 for spectra of real fields. Returns the real part and
// throws NumericalError if the imaginary residue exceeds 1e-9 (relative to
// the field's magnitude), i.e. if the spectrum was not Hermitian.
Tensor2D idft2(const Spectrum& s);

// Complex inverse without the realness check.
Spectrum idft2_complex(const Spectrum& s);

// Normalized radial distance of every bin from the centre bin; the
// farthest grid corner has r = 1.
Tensor2D radial_field(std::size_t rows, std::size_t cols);

} // namespace uhr::freq

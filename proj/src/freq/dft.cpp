#include "uhr/freq/dft.hpp"

#include "uhr/common/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <vector>

namespace uhr::freq {

namespace {

using cplx = std::complex<double>;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Unnormalized 1-D transform, sign -1 forward and +1 inverse. Radix-2 for
// powers of two, direct summation with an exact twiddle table otherwise.
class Transform1d {
public:
    Transform1d(std::size_t n, int sign) : n_(n), scratch_(n) {
        twiddle_.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double a = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / n;
            twiddle_[k] = {std::cos(a), std::sin(a)};
        }
        if (is_pow2(n)) {
            bitrev_.resize(n);
            std::size_t bits = 0;
            while ((std::size_t{1} << bits) < n) ++bits;
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t r = 0;
                for (std::size_t b = 0; b < bits; ++b)
                    if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
                bitrev_[i] = r;
            }
        }
    }

    // Transforms n values spaced `stride` apart, in place.
    void run(cplx* data, std::size_t stride) {
        for (std::size_t i = 0; i < n_; ++i) scratch_[i] = data[i * stride];
        if (!bitrev_.empty()) {
            radix2();
        } else {
            direct();
        }
        for (std::size_t i = 0; i < n_; ++i) data[i * stride] = scratch_[i];
    }

private:
    void radix2() {
        for (std::size_t i = 0; i < n_; ++i)
            if (i < bitrev_[i]) std::swap(scratch_[i], scratch_[bitrev_[i]]);
        for (std::size_t len = 2; len <= n_; len <<= 1) {
            const std::size_t step = n_ / len;
            for (std::size_t start = 0; start < n_; start += len)
                for (std::size_t k = 0; k < len / 2; ++k) {
                    const cplx u = scratch_[start + k];
                    const cplx v = scratch_[start + k + len / 2] * twiddle_[k * step];
                    scratch_[start + k] = u + v;
                    scratch_[start + k + len / 2] = u - v;
                }
        }
    }

    void direct() {
        out_.assign(n_, cplx{});
        for (std::size_t k = 0; k < n_; ++k) {
            cplx acc{};
            for (std::size_t j = 0; j < n_; ++j) acc += scratch_[j] * twiddle_[(j * k) % n_];
            out_[k] = acc;
        }
        scratch_.swap(out_);
    }

    std::size_t n_;
    std::vector<cplx> twiddle_;
    std::vector<std::size_t> bitrev_;
    std::vector<cplx> scratch_;
    std::vector<cplx> out_;
};

void transform2(Spectrum& s, int sign) {
    const std::size_t h = s.rows();
    const std::size_t w = s.cols();
    Transform1d rows(w, sign);
    for (std::size_t r = 0; r < h; ++r) rows.run(&s(r, 0), 1);
    Transform1d cols(h, sign);
    for (std::size_t c = 0; c < w; ++c) cols.run(&s(0, c), w);
    const double scale = 1.0 / std::sqrt(static_cast<double>(h * w));
    for (auto& v : s.values()) v *= scale;
}

// Natural index k lands at centred index (k + n/2) mod n.
Spectrum shift(const Spectrum& s, bool to_centre) {
    const std::size_t h = s.rows();
    const std::size_t w = s.cols();
    const std::size_t sh = to_centre ? h / 2 : h - h / 2;
    const std::size_t sw = to_centre ? w / 2 : w - w / 2;
    Spectrum out(h, w);
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < w; ++c) out((r + sh) % h, (c + sw) % w) = s(r, c);
    return out;
}

void require_2d(std::size_t rows, std::size_t cols) {
    if (rows < 2 || cols < 2)
        throw InvalidInput(fmt::format("2-D transforms need H, W >= 2, got {}x{}", rows, cols));
}

} // namespace

Spectrum dft2(const Tensor2D& x) {
    require_2d(x.rows(), x.cols());
    Spectrum s(x.rows(), x.cols());
    std::copy(x.values().begin(), x.values().end(), s.values().begin());
    transform2(s, -1);
    return shift(s, true);
}

Spectrum idft2_complex(const Spectrum& s) {
    require_2d(s.rows(), s.cols());
    Spectrum natural = shift(s, false);
    transform2(natural, +1);
    return natural;
}

Tensor2D idft2(const Spectrum& s) {
    const Spectrum z = idft2_complex(s);
    Tensor2D out(z.rows(), z.cols());
    double max_re = 0.0;
    double max_im = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        out.values()[i] = z.values()[i].real();
        max_re = std::max(max_re, std::abs(z.values()[i].real()));
        max_im = std::max(max_im, std::abs(z.values()[i].imag()));
    }
    if (max_im > 1e-9 * std::max(1.0, max_re))
        throw NumericalError(-1, fmt::format("idft2: imaginary residue {} on a spectrum expected "
                                             "to be Hermitian", max_im));
    return out;
}

Tensor2D radial_field(std::size_t rows, std::size_t cols) {
    require_2d(rows, cols);
    const double cu = static_cast<double>(rows / 2);
    const double cv = static_cast<double>(cols / 2);
    // Farthest corner from the centre.
    const double du = std::max(cu, static_cast<double>(rows - 1) - cu);
    const double dv = std::max(cv, static_cast<double>(cols - 1) - cv);
    const double r_max = std::hypot(du, dv);
    Tensor2D r(rows, cols);
    for (std::size_t u = 0; u < rows; ++u)
        for (std::size_t v = 0; v < cols; ++v)
            r(u, v) = std::hypot(u - cu, v - cv) / r_max;
    return r;
}

} // namespace uhr::freq

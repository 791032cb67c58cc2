#include "uhr/toy/predictor.hpp"

#include "uhr/common/error.hpp"
#include "uhr/common/rng.hpp"
#include "uhr/toy/flow.hpp"

#include <algorithm>
#include <cmath>

namespace uhr::toy {

PredictorParams init_params(std::uint64_t seed) {
    Rng rng(seed);
    PredictorParams p;
    for (std::size_t k = 0; k < kKernelTaps; ++k) p.values[k] = 0.02 * rng.normal();
    return p;
}

std::size_t time_bin(double t) {
    const auto b = static_cast<long>(std::floor(t * static_cast<double>(kTimeBins)));
    return static_cast<std::size_t>(std::clamp(b, 0L, static_cast<long>(kTimeBins) - 1));
}

namespace {

constexpr long kHalf = static_cast<long>(kKernelSide / 2);

// Calls f(ky, kx, y, x, sy, sx) for every kernel tap whose source pixel
// (sy, sx) lies inside the image.
template <typename F>
void for_each_tap(std::size_t rows, std::size_t cols, F&& f) {
    const auto h = static_cast<long>(rows);
    const auto w = static_cast<long>(cols);
    for (long ky = 0; ky < static_cast<long>(kKernelSide); ++ky) {
        const long oy = ky - kHalf;
        const long y0 = std::max(0L, -oy), y1 = std::min(h, h - oy);
        for (long kx = 0; kx < static_cast<long>(kKernelSide); ++kx) {
            const long ox = kx - kHalf;
            const long x0 = std::max(0L, -ox), x1 = std::min(w, w - ox);
            for (long y = y0; y < y1; ++y)
                for (long x = x0; x < x1; ++x) f(ky, kx, y, x, y + oy, x + ox);
        }
    }
}

} // namespace

Tensor2D predict(const PredictorParams& params, const Tensor2D& z, double t) {
    Tensor2D out(z.rows(), z.cols(), params.bias(time_bin(t)));
    for_each_tap(z.rows(), z.cols(), [&](long ky, long kx, long y, long x, long sy, long sx) {
        out(y, x) += params.kernel(ky, kx) * z(sy, sx);
    });
    return out;
}

LossGrad loss_and_grad(const PredictorParams& params, std::span<const FlowSample> batch,
                       const LossSettings& settings) {
    if (batch.empty()) throw InvalidInput("empty batch");
    if (settings.use_swfr) freq::validate(settings.freq);
    if (!(settings.lambda_freq >= 0.0)) throw InvalidInput("lambda_freq must be nonnegative");

    LossGrad out;
    const double nb = static_cast<double>(batch.size());
    for (const auto& s : batch) {
        const Tensor2D z = forward_diffuse(s.x0, s.eps, s.t);
        const Tensor2D v = velocity_target(s.x0, s.eps);
        const Tensor2D vhat = predict(params, z, s.t);
        const double npix = static_cast<double>(v.size());

        // dL/dv_hat for this sample.
        Tensor2D g(v.rows(), v.cols());
        double sq = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double r = vhat.values()[i] - v.values()[i];
            sq += r * r;
            g.values()[i] = 2.0 * r / (nb * npix);
        }
        out.loss.diff += sq / (nb * npix);

        if (settings.use_swfr) {
            const auto f = freq::freq_loss_and_grad(vhat, v, settings.freq);
            out.loss.freq += f.loss / nb;
            const double scale = settings.lambda_freq / nb;
            for (std::size_t i = 0; i < g.size(); ++i) g.values()[i] += scale * f.grad.values()[i];
        }

        for_each_tap(z.rows(), z.cols(), [&](long ky, long kx, long y, long x, long sy, long sx) {
            out.grad.kernel(ky, kx) += g(y, x) * z(sy, sx);
        });
        double gsum = 0.0;
        for (double gi : g.values()) gsum += gi;
        out.grad.bias(time_bin(s.t)) += gsum;
    }

    out.loss.total = out.loss.diff + (settings.use_swfr ? settings.lambda_freq * out.loss.freq : 0.0);
    if (!std::isfinite(out.loss.total)) throw NumericalError(-1, "non-finite training loss");
    return out;
}

} // namespace uhr::toy

#pragma once

#include <cstdint>
#include <random>

namespace uhr {

// Seeded random source with platform-independent output. The standard
// distributions are implementation-defined, so uniform and normal variates
// are derived here directly from the 64-bit engine.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    // Uniform on (0, 1).
    double uniform_open();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);
    // Standard normal (Marsaglia polar method).
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// SplitMix64 finalizer; maps (seed, stream) to an independent child seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace uhr

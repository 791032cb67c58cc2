#pragma once

#include "uhr/toy/trainer.hpp"

#include <json.hpp>
#include <string>
#include <vector>

namespace uhr::toy {

struct Arm {
    std::string name;
    bool use_dots = false;
    bool use_swfr = false;
};

struct CompareOptions {
    std::size_t n_seeds = 10;
    std::size_t eval_count = 64;
    BandErrorOptions bands;
    Arm baseline{"baseline", false, false};
    Arm treatment{"fapt", true, true};
    // Low-band error of the treatment may exceed the baseline's by at most
    // this fraction for a seed to count as structure-preserving.
    double low_band_tolerance = 0.20;
};

struct ArmResult {
    std::vector<double> band_errors;
    double initial_loss = 0.0;  // mean over the first 10 steps
    double final_loss = 0.0;    // mean over the last 100 steps
};

struct SeedResult {
    std::uint64_t seed = 0;
    ArmResult baseline;
    ArmResult treatment;
    bool high_band_win = false;  // treatment strictly lower in the last band
    bool low_band_ok = false;    // treatment first band <= (1 + tol) * baseline
};

struct CompareReport {
    TrainConfig config;
    CompareOptions options;
    std::vector<SeedResult> seeds;
    std::size_t runs = 0;
    std::size_t high_band_wins = 0;
    std::size_t low_band_ok = 0;
};

// For seeds cfg.seed .. cfg.seed + n - 1, trains both arms on identical
// texture and noise streams and compares band errors on a shared held-out
// set.
CompareReport experiment_compare(const TrainConfig& cfg, const CompareOptions& opts = {});

nlohmann::ordered_json to_json(const CompareReport& report);
std::string to_text(const CompareReport& report);

} // namespace uhr::toy

#pragma once

#include "uhr/curation/record.hpp"
#include "uhr/curation/scorer.hpp"
#include "uhr/toy/trainer.hpp"

#include <filesystem>
#include <json.hpp>
#include <map>
#include <string>
#include <vector>

namespace uhr::cli {

// Every tunable of every subcommand. Config files and flags share the same
// kebab-case keys; unknown keys are rejected.
struct RunConfig {
    curation::SelectionConfig selection;
    curation::ScorerSpec scorer;
    long scorer_timeout_ms = 30000;
    toy::TrainConfig train;  // also holds lambda/gamma and alpha/beta

    std::size_t workers = 1;
    bool resume = true;

    std::string input;
    std::string output;
    std::string manifest;
    std::string captions;

    // dots-sample
    std::size_t samples = 100000;
    std::size_t histogram = 0;
    // compare
    std::size_t seeds = 10;
    std::size_t eval_count = 64;
    // freq-analyze
    std::size_t bands = 8;
    std::size_t freq_long_side = 256;
};

// All known keys in their canonical order.
std::vector<std::string> config_keys();

// Sets one key from its textual (flag) form. Throws InvalidInput.
void set_from_string(RunConfig& cfg, const std::string& key, const std::string& value);

// Applies every key of a JSON object. Throws InvalidInput on unknown keys or
// wrong value types.
void apply_json(RunConfig& cfg, const nlohmann::json& j);

RunConfig load_config(const std::filesystem::path& path);

// Resolved configuration with every key present.
nlohmann::ordered_json to_json(const RunConfig& cfg);

// Range checks across all sections. Throws InvalidInput.
void validate(const RunConfig& cfg);

} // namespace uhr::cli

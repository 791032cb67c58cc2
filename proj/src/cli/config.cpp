#include "uhr/cli/config.hpp"

#include "uhr/common/error.hpp"

#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <variant>

namespace uhr::cli {

using json = nlohmann::json;

namespace {

static_assert(std::is_same_v<std::size_t, std::uint64_t>, "seed shares the size_t alternative");
using Ref = std::variant<double*, std::size_t*, long*, int*, bool*, std::string*>;

struct Field {
    const char* key;
    std::function<Ref(RunConfig&)> ref;
};

#define UHR_FIELD(key, member) Field{key, [](RunConfig& c) -> Ref { return &c.member; }}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        UHR_FIELD("input", input),
        UHR_FIELD("output", output),
        UHR_FIELD("manifest", manifest),
        UHR_FIELD("captions", captions),
        UHR_FIELD("workers", workers),
        UHR_FIELD("resume", resume),
        UHR_FIELD("laplacian-min", selection.laplacian_min),
        UHR_FIELD("sobel-density-min", selection.sobel_density_min),
        UHR_FIELD("sobel-grad-threshold", selection.sobel_grad_threshold),
        UHR_FIELD("top-fraction", selection.top_fraction),
        UHR_FIELD("min-avg-resolution", selection.min_avg_resolution),
        UHR_FIELD("metric-long-side", selection.metric_long_side),
        UHR_FIELD("glcm-levels", selection.glcm_levels),
        UHR_FIELD("glcm-distance", selection.glcm_distance),
        UHR_FIELD("scorer-location", scorer.location),
        UHR_FIELD("scorer-timeout-ms", scorer_timeout_ms),
        UHR_FIELD("lambda", train.freq.lambda),
        UHR_FIELD("gamma", train.freq.gamma),
        UHR_FIELD("alpha", train.beta.alpha),
        UHR_FIELD("beta", train.beta.beta),
        UHR_FIELD("lambda-freq", train.lambda_freq),
        UHR_FIELD("steps", train.steps),
        UHR_FIELD("batch-size", train.batch_size),
        UHR_FIELD("learning-rate", train.learning_rate),
        UHR_FIELD("seed", train.seed),
        UHR_FIELD("use-dots", train.use_dots),
        UHR_FIELD("use-swfr", train.use_swfr),
        UHR_FIELD("image-size", train.image_size),
        UHR_FIELD("samples", samples),
        UHR_FIELD("histogram", histogram),
        UHR_FIELD("seeds", seeds),
        UHR_FIELD("eval-count", eval_count),
        UHR_FIELD("bands", bands),
        UHR_FIELD("freq-long-side", freq_long_side),
    };
    return table;
}

#undef UHR_FIELD

// scorer-kind is an enum and handled separately.
constexpr const char* kScorerKind = "scorer-kind";

const Field* find_field(const std::string& key) {
    for (const auto& f : fields())
        if (key == f.key) return &f;
    return nullptr;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& why) {
    throw InvalidInput(fmt::format("config key '{}': {}", key, why));
}

template <typename T>
T parse_integer(const std::string& key, const std::string& s) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) bad_value(key, "expected an integer, got '" + s + "'");
    return v;
}

} // namespace

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& f : fields()) {
        if (std::string_view(f.key) == "scorer-location") keys.emplace_back(kScorerKind);
        keys.emplace_back(f.key);
    }
    return keys;
}

void set_from_string(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == kScorerKind) {
        cfg.scorer.kind = curation::parse_scorer_kind(value);
        return;
    }
    const Field* f = find_field(key);
    if (!f) throw InvalidInput("unknown config key '" + key + "'");
    std::visit([&](auto* p) {
        using T = std::remove_pointer_t<decltype(p)>;
        if constexpr (std::is_same_v<T, std::string>) {
            *p = value;
        } else if constexpr (std::is_same_v<T, bool>) {
            if (value == "true" || value == "1") *p = true;
            else if (value == "false" || value == "0") *p = false;
            else bad_value(key, "expected true or false, got '" + value + "'");
        } else if constexpr (std::is_same_v<T, double>) {
            std::size_t used = 0;
            try {
                *p = std::stod(value, &used);
            } catch (const std::exception&) {
                bad_value(key, "expected a number, got '" + value + "'");
            }
            if (used != value.size()) bad_value(key, "expected a number, got '" + value + "'");
        } else {
            *p = parse_integer<T>(key, value);
        }
    }, f->ref(cfg));
}

void apply_json(RunConfig& cfg, const json& j) {
    if (!j.is_object()) throw InvalidInput("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == kScorerKind) {
            if (!value.is_string()) bad_value(key, "expected a string");
            cfg.scorer.kind = curation::parse_scorer_kind(value.get<std::string>());
            continue;
        }
        const Field* f = find_field(key);
        if (!f) throw InvalidInput("unknown config key '" + key + "'");
        std::visit([&](auto* p) {
            using T = std::remove_pointer_t<decltype(p)>;
            if constexpr (std::is_same_v<T, std::string>) {
                if (!value.is_string()) bad_value(key, "expected a string");
                *p = value.get<std::string>();
            } else if constexpr (std::is_same_v<T, bool>) {
                if (!value.is_boolean()) bad_value(key, "expected a boolean");
                *p = value.get<bool>();
            } else if constexpr (std::is_same_v<T, double>) {
                if (!value.is_number()) bad_value(key, "expected a number");
                *p = value.get<double>();
            } else if constexpr (std::is_signed_v<T>) {
                if (!value.is_number_integer()) bad_value(key, "expected an integer");
                *p = value.get<T>();
            } else {
                if (!value.is_number_unsigned()) bad_value(key, "expected a nonnegative integer");
                *p = value.get<T>();
            }
        }, f->ref(cfg));
    }
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput(fmt::format("config file {}: {}", path.string(), e.what()));
    }
    RunConfig cfg;
    apply_json(cfg, j);
    return cfg;
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    RunConfig copy = cfg;
    for (const auto& f : fields()) {
        if (std::string_view(f.key) == "scorer-location")
            j[kScorerKind] = std::string(curation::to_string(cfg.scorer.kind));
        std::visit([&](auto* p) { j[f.key] = *p; }, f.ref(copy));
    }
    return j;
}

void validate(const RunConfig& cfg) {
    curation::validate(cfg.selection);
    toy::validate(cfg.train);
    if (cfg.workers < 1) throw InvalidInput("workers must be at least 1");
    if (cfg.scorer_timeout_ms <= 0) throw InvalidInput("scorer-timeout-ms must be positive");
    if (cfg.samples < 1) throw InvalidInput("samples must be at least 1");
    if (cfg.seeds < 1) throw InvalidInput("seeds must be at least 1");
    if (cfg.eval_count < 1) throw InvalidInput("eval-count must be at least 1");
    if (cfg.bands < 1) throw InvalidInput("bands must be at least 1");
    if (cfg.freq_long_side < 2) throw InvalidInput("freq-long-side must be at least 2");
}

} // namespace uhr::cli

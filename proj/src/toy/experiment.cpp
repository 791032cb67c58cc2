#include "uhr/toy/experiment.hpp"

#include "uhr/common/error.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <iostream>

namespace uhr::toy {

namespace {

double mean_total(const std::vector<LossBreakdown>& log, std::size_t first, std::size_t last) {
    if (first >= last) return 0.0;
    double s = 0.0;
    for (std::size_t i = first; i < last; ++i) s += log[i].total;
    return s / static_cast<double>(last - first);
}

ArmResult run_arm(TrainConfig cfg, const Arm& arm, const EvalSet& eval, const BandErrorOptions& bands) {
    cfg.use_dots = arm.use_dots;
    cfg.use_swfr = arm.use_swfr;
    const TrainResult tr = train(cfg);
    const std::size_t n = tr.log.size();
    return {band_error(tr.params, eval, bands), mean_total(tr.log, 0, std::min<std::size_t>(10, n)),
            mean_total(tr.log, n - std::min<std::size_t>(100, n), n)};
}

} // namespace

CompareReport experiment_compare(const TrainConfig& cfg, const CompareOptions& opts) {
    if (opts.n_seeds < 1) throw InvalidInput("compare needs at least one seed");
    if (opts.eval_count < 1) throw InvalidInput("compare needs a nonempty eval set");
    validate(cfg);

    CompareReport rep{cfg, opts, {}, 0, 0, 0};
    for (std::size_t k = 0; k < opts.n_seeds; ++k) {
        TrainConfig c = cfg;
        c.seed = cfg.seed + k;
        const EvalSet eval = make_eval_set(c.seed, opts.eval_count, c.image_size);

        SeedResult sr;
        sr.seed = c.seed;
        sr.baseline = run_arm(c, opts.baseline, eval, opts.bands);
        sr.treatment = run_arm(c, opts.treatment, eval, opts.bands);
        rep.runs += 2;

        const auto& b = sr.baseline.band_errors;
        const auto& t = sr.treatment.band_errors;
        sr.high_band_win = t.back() < b.back();
        sr.low_band_ok = t.front() <= (1.0 + opts.low_band_tolerance) * b.front();
        rep.high_band_wins += sr.high_band_win;
        rep.low_band_ok += sr.low_band_ok;
        std::cerr << fmt::format("seed {}: high band {:.6g} vs {:.6g}, low band {:.6g} vs {:.6g}\n", c.seed,
                                 t.back(), b.back(), t.front(), b.front());
        rep.seeds.push_back(std::move(sr));
    }
    return rep;
}

nlohmann::ordered_json to_json(const CompareReport& report) {
    using oj = nlohmann::ordered_json;
    const auto& c = report.config;
    oj j;
    j["config"] = {{"lambda_freq", c.lambda_freq}, {"lambda", c.freq.lambda}, {"gamma", c.freq.gamma},
                   {"alpha", c.beta.alpha}, {"beta", c.beta.beta}, {"steps", c.steps},
                   {"batch_size", c.batch_size}, {"learning_rate", c.learning_rate}, {"seed", c.seed},
                   {"image_size", c.image_size}, {"timestep_convention", dots::kTimestepConvention}};
    j["arms"] = {{"baseline", {{"name", report.options.baseline.name},
                               {"use_dots", report.options.baseline.use_dots},
                               {"use_swfr", report.options.baseline.use_swfr}}},
                 {"treatment", {{"name", report.options.treatment.name},
                                {"use_dots", report.options.treatment.use_dots},
                                {"use_swfr", report.options.treatment.use_swfr}}}};
    j["band_edges"] = report.options.bands.edges;
    j["eval_times"] = report.options.bands.times;
    j["eval_count"] = report.options.eval_count;
    auto arm = [](const ArmResult& a) {
        return oj{{"band_errors", a.band_errors}, {"initial_loss", a.initial_loss}, {"final_loss", a.final_loss}};
    };
    auto seeds = oj::array();
    for (const auto& s : report.seeds)
        seeds.push_back({{"seed", s.seed}, {"baseline", arm(s.baseline)}, {"treatment", arm(s.treatment)},
                         {"high_band_win", s.high_band_win}, {"low_band_ok", s.low_band_ok}});
    j["seeds"] = std::move(seeds);
    j["runs"] = report.runs;
    j["high_band_wins"] = report.high_band_wins;
    j["low_band_ok"] = report.low_band_ok;
    j["low_band_tolerance"] = report.options.low_band_tolerance;
    return j;
}

std::string to_text(const CompareReport& report) {
    const auto& edges = report.options.bands.edges;
    std::string out = fmt::format("{:>6}  {:<10}", "seed", "arm");
    for (std::size_t b = 0; b + 1 < edges.size(); ++b)
        out += fmt::format("  {:>14}", fmt::format("[{:g},{:g}{}", edges[b], edges[b + 1], b + 2 == edges.size() ? "]" : ")"));
    out += "\n";
    for (const auto& s : report.seeds) {
        for (const auto* a : {&s.baseline, &s.treatment}) {
            const auto& name = a == &s.baseline ? report.options.baseline.name : report.options.treatment.name;
            out += fmt::format("{:>6}  {:<10}", s.seed, name);
            for (double e : a->band_errors) out += fmt::format("  {:>14.6e}", e);
            out += "\n";
        }
    }
    out += fmt::format("\nhigh-band wins: {}/{}\nlow-band within {:g}%: {}/{}\n", report.high_band_wins,
                       report.seeds.size(), 100.0 * report.options.low_band_tolerance, report.low_band_ok,
                       report.seeds.size());
    return out;
}

} // namespace uhr::toy

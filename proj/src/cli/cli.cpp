#include "uhr/cli/cli.hpp"

#include "uhr/cli/config.hpp"
#include "uhr/common/error.hpp"
#include "uhr/common/parallel.hpp"
#include "uhr/curation/captions.hpp"
#include "uhr/curation/corpus.hpp"
#include "uhr/curation/image_io.hpp"
#include "uhr/curation/manifest.hpp"
#include "uhr/curation/selection.hpp"
#include "uhr/curation/stats.hpp"
#include "uhr/dots/beta.hpp"
#include "uhr/freq/swfr.hpp"
#include "uhr/toy/experiment.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <map>
#include <ostream>
#include <unordered_map>

namespace uhr::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

struct Context {
    RunConfig cfg;
    std::ostream& out;
};

void require(const std::string& value, const char* key) {
    if (value.empty()) throw InvalidInput(fmt::format("--{} is required", key));
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text) || !f.flush()) throw IoError("cannot write " + path.string());
}

// Resolved configuration next to every output file.
void echo_config(const RunConfig& cfg, const fs::path& output) {
    write_text(output.string() + ".config.json", to_json(cfg).dump(2) + "\n");
}

void prepare_output(const fs::path& output) {
    if (output.has_parent_path()) fs::create_directories(output.parent_path());
}

// ------------------------------------------------------------------ curation

int cmd_scan(Context& ctx) {
    const auto& c = ctx.cfg;
    require(c.input, "input");
    require(c.output, "output");
    prepare_output(c.output);
    const auto result = curation::scan_corpus(c.input, c.workers);
    curation::write_manifest(result.records, c.output);
    echo_config(c, c.output);
    ctx.out << fmt::format("scanned {} images, excluded {}\n", result.records.size(), result.excluded.size());
    return kExitOk;
}

int cmd_metrics(Context& ctx) {
    const auto& c = ctx.cfg;
    require(c.input, "input");
    require(c.output, "output");
    prepare_output(c.output);
    const auto paths = curation::list_image_files(c.input);

    // Records already measured by an earlier, possibly interrupted, run.
    std::unordered_map<std::string, curation::ImageRecord> done;
    if (c.resume && fs::exists(c.output)) {
        for (auto& r : curation::read_manifest(c.output, {.tolerate_truncated_tail = true}))
            if (r.metrics) done[r.path] = std::move(r);
    }
    std::vector<curation::ImageRecord> recovered;
    std::vector<std::string> todo;
    for (const auto& p : paths) {
        if (auto it = done.find(p); it != done.end()) {
            recovered.push_back(it->second);
        } else {
            todo.push_back(p);
        }
    }
    if (!done.empty())
        std::cerr << fmt::format("resuming: {} of {} images already measured\n", recovered.size(), paths.size());

    // Drop any torn tail line, then append records as they finish.
    curation::write_manifest(recovered, c.output);
    std::size_t finished = 0;
    curation::ScanResult fresh;
    {
        std::ofstream partial(c.output, std::ios::binary | std::ios::app);
        if (!partial) throw IoError("cannot append to " + c.output);
        fresh = curation::compute_corpus_metrics(c.input, todo, c.selection, c.workers,
                                                 [&](const curation::ImageRecord& r) {
                                                     partial << curation::to_manifest_line(r) << '\n';
                                                     partial.flush();
                                                     if (++finished % 100 == 0)
                                                         std::cerr << fmt::format("measured {}/{}\n", finished,
                                                                                  todo.size());
                                                 });
    }

    std::vector<curation::ImageRecord> all = std::move(recovered);
    for (auto& r : fresh.records) all.push_back(std::move(r));
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
    curation::write_manifest(all, c.output);
    echo_config(c, c.output);
    ctx.out << fmt::format("measured {} images ({} resumed), excluded {}\n", all.size(),
                           all.size() - fresh.records.size(), fresh.excluded.size());
    return kExitOk;
}

int cmd_select(Context& ctx) {
    const auto& c = ctx.cfg;
    require(c.manifest, "manifest");
    require(c.output, "output");
    if (c.scorer.kind == curation::ScorerKind::heuristic) require(c.input, "input");
    if (c.scorer.kind != curation::ScorerKind::heuristic) require(c.scorer.location, "scorer-location");
    prepare_output(c.output);

    auto records = curation::read_manifest(c.manifest);
    curation::ScorerOptions opts;
    opts.response_timeout = std::chrono::milliseconds(c.scorer_timeout_ms);
    const auto report = curation::aesthetic_score(records, c.scorer, c.input, opts);
    curation::run_selection(records, c.selection);
    curation::write_manifest(records, c.output);
    echo_config(c, c.output);

    const auto counts = curation::stats_report(records).counts;
    ctx.out << fmt::format("scored {} ({} unscored); |S| = {}, |S_G| = {}, |S_E| = {}, |S_A| = {}, selected = {}\n",
                           report.scored, report.unscored.size(), counts.S, counts.SG, counts.SE, counts.SA,
                           counts.selected);
    return kExitOk;
}

int cmd_caption_merge(Context& ctx) {
    const auto& c = ctx.cfg;
    require(c.manifest, "manifest");
    require(c.captions, "captions");
    require(c.output, "output");
    prepare_output(c.output);
    auto records = curation::read_manifest(c.manifest);
    const std::size_t n = curation::merge_captions(records, c.captions);
    curation::write_manifest(records, c.output);
    echo_config(c, c.output);
    ctx.out << fmt::format("attached {} captions to {} records\n", n, records.size());
    return kExitOk;
}

int cmd_stats(Context& ctx) {
    const auto& c = ctx.cfg;
    require(c.manifest, "manifest");
    const auto report = curation::stats_report(curation::read_manifest(c.manifest));
    ctx.out << curation::to_text(report);
    if (!c.output.empty()) {
        write_text(c.output, curation::to_json(report).dump(2) + "\n");
        echo_config(c, c.output);
    }
    return kExitOk;
}

// --------------------------------------------------------------- numerics

int cmd_freq_analyze(Context& ctx) {
    const auto& c = ctx.cfg;
    require(c.input, "input");
    require(c.output, "output");
    const auto paths = curation::list_image_files(c.input);
    std::vector<double> edges(c.bands + 1);
    for (std::size_t b = 0; b <= c.bands; ++b) edges[b] = static_cast<double>(b) / c.bands;
    edges.back() = 1.0;

    std::vector<std::optional<ojson>> rows(paths.size());
    parallel_for(paths.size(), c.workers, [&](std::size_t i) {
        try {
            const auto rgb = curation::decode_rgb(fs::path(c.input) / paths[i]);
            const auto gray = metrics::downsample(metrics::to_grayscale(rgb), c.freq_long_side);
            Tensor2D field(gray.height(), gray.width());
            for (std::size_t k = 0; k < field.size(); ++k) field.values()[k] = gray.values()[k] / 255.0;
            const auto energy = freq::band_energies(field, edges);
            double total = 0.0;
            for (double e : energy) total += e;
            std::vector<double> share(energy.size(), 0.0);
            if (total > 0.0)
                for (std::size_t b = 0; b < energy.size(); ++b) share[b] = energy[b] / total;
            rows[i] = ojson{{"path", paths[i]}, {"width", rgb.width}, {"height", rgb.height},
                            {"analyzed_width", gray.width()}, {"analyzed_height", gray.height()},
                            {"energy", energy}, {"share", share}};
        } catch (const Error& e) {
            std::cerr << fmt::format("excluded {}: {}\n", paths[i], e.what());
        }
    });

    ojson doc;
    doc["band_edges"] = edges;
    doc["images"] = ojson::array();
    for (auto& r : rows)
        if (r) doc["images"].push_back(std::move(*r));
    write_text(c.output, doc.dump(2) + "\n");
    echo_config(c, c.output);
    ctx.out << fmt::format("analyzed {} images\n", doc["images"].size());
    return kExitOk;
}

int cmd_dots_sample(Context& ctx) {
    const auto& c = ctx.cfg;
    const auto& p = c.train.beta;
    Rng rng(c.train.seed);
    ojson doc;
    doc["alpha"] = p.alpha;
    doc["beta"] = p.beta;
    doc["seed"] = c.train.seed;
    doc["n"] = c.samples;
    doc["timestep_convention"] = dots::kTimestepConvention;
    if (p.alpha > 1.0 && p.beta > 1.0) doc["mode"] = (p.alpha - 1.0) / (p.alpha + p.beta - 2.0);

    if (c.histogram > 0) {
        std::vector<std::size_t> counts(c.histogram, 0);
        for (std::size_t i = 0; i < c.samples; ++i) {
            const double t = dots::sample_beta(rng, p);
            ++counts[std::min(static_cast<std::size_t>(t * c.histogram), c.histogram - 1)];
        }
        std::vector<double> edges(c.histogram + 1);
        for (std::size_t b = 0; b <= c.histogram; ++b) edges[b] = static_cast<double>(b) / c.histogram;
        const auto argmax = static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
        doc["histogram"] = {{"edges", edges}, {"counts", counts}, {"argmax_bin", argmax},
                            {"argmax_range", {edges[argmax], edges[argmax + 1]}}};
    } else {
        std::vector<double> samples(c.samples);
        for (double& t : samples) t = dots::sample_beta(rng, p);
        doc["samples"] = samples;
    }

    if (c.output.empty()) {
        ctx.out << doc.dump() << "\n";
    } else {
        write_text(c.output, doc.dump() + "\n");
        echo_config(c, c.output);
    }
    return kExitOk;
}

ojson params_json(const toy::PredictorParams& p) {
    std::vector<double> kernel(p.values.begin(), p.values.begin() + toy::kKernelTaps);
    std::vector<double> bias(p.values.begin() + toy::kKernelTaps, p.values.end());
    return {{"kernel", kernel}, {"bias", bias}};
}

int cmd_train_toy(Context& ctx) {
    const auto& c = ctx.cfg;
    require(c.output, "output");
    const auto result = toy::train(c.train);
    ojson doc;
    doc["timestep_convention"] = dots::kTimestepConvention;
    doc["initial_params"] = params_json(result.initial);
    doc["params"] = params_json(result.params);
    auto log = ojson::array();
    for (const auto& l : result.log) log.push_back({{"total", l.total}, {"diff", l.diff}, {"freq", l.freq}});
    doc["log"] = std::move(log);
    write_text(c.output, doc.dump() + "\n");
    echo_config(c, c.output);
    if (!result.log.empty())
        ctx.out << fmt::format("trained {} steps: loss {:.6g} -> {:.6g}\n", result.log.size(),
                               result.log.front().total, result.log.back().total);
    else
        ctx.out << "trained 0 steps\n";
    return kExitOk;
}

int cmd_compare(Context& ctx) {
    const auto& c = ctx.cfg;
    toy::CompareOptions opts;
    opts.n_seeds = c.seeds;
    opts.eval_count = c.eval_count;
    const auto report = toy::experiment_compare(c.train, opts);
    ctx.out << toy::to_text(report);
    if (!c.output.empty()) {
        write_text(c.output, toy::to_json(report).dump(2) + "\n");
        echo_config(c, c.output);
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Curation pipeline and frequency-aware training toolkit for ultra-high-resolution images",
                 "uhrtool"};
    app.require_subcommand(1, 1);

    using Handler = int (*)(Context&);
    const std::vector<std::tuple<const char*, const char*, Handler>> commands = {
        {"scan", "List decodable images under --input with their dimensions", cmd_scan},
        {"metrics", "Measure every image (resumable); writes a manifest", cmd_metrics},
        {"select", "Score aesthetics, filter, rank and intersect a manifest", cmd_select},
        {"stats", "Subset counts and histograms of a manifest", cmd_stats},
        {"caption-merge", "Attach <stem>.txt caption sidecars to a manifest", cmd_caption_merge},
        {"freq-analyze", "Radial-band spectral energy of every corpus image", cmd_freq_analyze},
        {"dots-sample", "Draw Beta timestep samples or a histogram", cmd_dots_sample},
        {"train-toy", "Train the toy rectified-flow predictor", cmd_train_toy},
        {"compare", "Baseline vs DOTS+SWFR band-error experiment", cmd_compare},
    };

    std::string config_path;
    std::map<std::string, std::string> raw;
    std::map<std::string, Handler> handlers;
    for (const auto& [name, help, handler] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        handlers[name] = handler;
        sub->add_option("--config", config_path, "JSON config file; flags override its values");
        for (const auto& key : config_keys()) {
            std::string flag = "--" + key;
            if (key == "samples") flag += ",-n";
            sub->add_option_function<std::string>(flag, [&raw, key](const std::string& v) { raw[key] = v; },
                                                  "config key '" + key + "'");
        }
    }

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return kExitInvalid;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        for (const auto& [key, value] : raw) set_from_string(cfg, key, value);
        validate(cfg);
        Context ctx{std::move(cfg), out};
        return handlers.at(name)(ctx);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

} // namespace uhr::cli

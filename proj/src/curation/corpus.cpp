#include "uhr/curation/corpus.hpp"

#include "uhr/common/error.hpp"
#include "uhr/common/parallel.hpp"
#include "uhr/curation/image_io.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <iostream>
#include <mutex>
#include <optional>
#include <variant>

namespace uhr::curation {

namespace fs = std::filesystem;

void validate(const SelectionConfig& cfg) {
    if (!(cfg.top_fraction > 0.0 && cfg.top_fraction <= 1.0))
        throw InvalidInput(fmt::format("top_fraction must be in (0, 1], got {}", cfg.top_fraction));
    if (!(cfg.laplacian_min >= 0.0) || !(cfg.sobel_density_min >= 0.0) ||
        !(cfg.sobel_grad_threshold >= 0.0) || !(cfg.min_avg_resolution >= 0.0))
        throw InvalidInput("selection thresholds must be nonnegative");
    if (cfg.metric_long_side < 2) throw InvalidInput("metric_long_side must be at least 2");
    if (cfg.glcm_levels < 2 || cfg.glcm_levels > 256)
        throw InvalidInput("glcm_levels must be in [2, 256]");
    if (cfg.glcm_distance < 1) throw InvalidInput("glcm_distance must be at least 1");
}

double to_manifest_precision(double v) { return static_cast<double>(static_cast<float>(v)); }

void round_to_manifest_precision(metrics::MetricVector& m) {
    m.laplacian_var = to_manifest_precision(m.laplacian_var);
    m.sobel_edge_density = to_manifest_precision(m.sobel_edge_density);
    for (auto& g : m.glcm) {
        g.contrast = to_manifest_precision(g.contrast);
        g.entropy = to_manifest_precision(g.entropy);
        g.correlation = to_manifest_precision(g.correlation);
    }
    m.glcm_score = to_manifest_precision(m.glcm_score);
    m.shannon_entropy = to_manifest_precision(m.shannon_entropy);
    if (m.aesthetic) m.aesthetic = to_manifest_precision(*m.aesthetic);
}

std::vector<std::string> list_image_files(const fs::path& root) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw IoError("corpus root is not a directory: " + root.string());
    std::vector<std::string> out;
    fs::recursive_directory_iterator it(root, fs::directory_options::none, ec);
    if (ec) throw IoError("cannot read corpus root " + root.string() + ": " + ec.message());
    for (const auto& entry : it) {
        if (!entry.is_regular_file() || !has_image_extension(entry.path())) continue;
        out.push_back(fs::relative(entry.path(), root).generic_string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

metrics::MetricVector measure(const metrics::RgbImage& rgb, const SelectionConfig& cfg) {
    auto m = metrics::compute_metrics(metrics::to_grayscale(rgb), cfg.metrics_config());
    round_to_manifest_precision(m);
    return m;
}

namespace {

using Outcome = std::variant<ImageRecord, Exclusion>;

ScanResult process(const fs::path& root, const std::vector<std::string>& paths, std::size_t workers,
                   const std::function<ImageRecord(const std::string&)>& work,
                   const RecordSink& on_record) {
    std::vector<std::optional<Outcome>> slots(paths.size());
    std::mutex sink_mutex;
    parallel_for(paths.size(), workers, [&](std::size_t i) {
        Outcome o;
        try {
            o = work(paths[i]);
        } catch (const Error& e) {
            o = Exclusion{paths[i], e.what()};
        }
        std::lock_guard lock(sink_mutex);
        if (on_record && std::holds_alternative<ImageRecord>(o)) on_record(std::get<ImageRecord>(o));
        slots[i] = std::move(o);
    });

    ScanResult result;
    for (auto& s : slots) {
        if (auto* rec = std::get_if<ImageRecord>(&*s)) {
            result.records.push_back(std::move(*rec));
        } else {
            auto& ex = std::get<Exclusion>(*s);
            std::cerr << fmt::format("excluded {}: {}\n", (root / ex.path).string(), ex.reason);
            result.excluded.push_back(std::move(ex));
        }
    }
    return result;
}

} // namespace

ScanResult scan_corpus(const fs::path& root, std::size_t workers) {
    const auto paths = list_image_files(root);
    return process(root, paths, workers, [&](const std::string& p) {
        const auto rgb = decode_rgb(root / p);
        ImageRecord r;
        r.path = p;
        r.width = rgb.width;
        r.height = rgb.height;
        return r;
    }, {});
}

ScanResult compute_corpus_metrics(const fs::path& root, const std::vector<std::string>& paths,
                                  const SelectionConfig& cfg, std::size_t workers,
                                  const RecordSink& on_record) {
    validate(cfg);
    std::vector<std::string> sorted = paths;
    std::sort(sorted.begin(), sorted.end());
    return process(root, sorted, workers, [&](const std::string& p) {
        const auto rgb = decode_rgb(root / p);
        if (rgb.width < 3 || rgb.height < 3)
            throw InvalidInput(fmt::format("image is {}x{}, metrics need at least 3x3", rgb.width, rgb.height));
        ImageRecord r;
        r.path = p;
        r.width = rgb.width;
        r.height = rgb.height;
        r.metrics = measure(rgb, cfg);
        return r;
    }, on_record);
}

} // namespace uhr::curation

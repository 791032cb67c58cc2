#include "uhr/curation/stats.hpp"

#include "uhr/common/error.hpp"

#include <algorithm>
#include <fmt/format.h>

namespace uhr::curation {

Histogram make_histogram(std::string name, const std::vector<double>& values, std::size_t bins) {
    if (bins == 0) throw InvalidInput("histogram needs at least one bin");
    Histogram h{std::move(name), {}, {}, values.size()};
    if (values.empty()) return h;
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (lo == hi) {
        h.edges = {lo, hi};
        h.counts = {values.size()};
        return h;
    }
    h.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = lo + (hi - lo) * static_cast<double>(b) / bins;
    h.edges.back() = hi;
    h.counts.assign(bins, 0);
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
        ++h.counts[std::min(b, bins - 1)];
    }
    return h;
}

StatsReport stats_report(const std::vector<ImageRecord>& records, std::size_t bins) {
    StatsReport rep;
    auto& c = rep.counts;
    std::vector<double> avg, width, height, caption_len, lap, sobel, glcm, entropy, aesthetic;
    for (const auto& r : records) {
        ++c.total;
        c.S += r.in_S;
        c.SG += r.in_SG;
        c.SE += r.in_SE;
        c.SA += r.in_SA;
        c.selected += r.selected;
        avg.push_back(r.avg_resolution());
        width.push_back(static_cast<double>(r.width));
        height.push_back(static_cast<double>(r.height));
        if (r.caption_len) {
            ++c.captioned;
            caption_len.push_back(static_cast<double>(*r.caption_len));
        }
        if (r.metrics) {
            ++c.with_metrics;
            lap.push_back(r.metrics->laplacian_var);
            sobel.push_back(r.metrics->sobel_edge_density);
            glcm.push_back(r.metrics->glcm_score);
            entropy.push_back(r.metrics->shannon_entropy);
            if (r.metrics->aesthetic) {
                ++c.scored;
                aesthetic.push_back(*r.metrics->aesthetic);
            }
        }
    }
    rep.histograms = {
        make_histogram("avg_resolution", avg, bins),
        make_histogram("width", width, bins),
        make_histogram("height", height, bins),
        make_histogram("caption_len", caption_len, bins),
        make_histogram("laplacian_var", lap, bins),
        make_histogram("sobel_edge_density", sobel, bins),
        make_histogram("glcm_score", glcm, bins),
        make_histogram("shannon_entropy", entropy, bins),
        make_histogram("aesthetic", aesthetic, bins),
    };
    return rep;
}

nlohmann::ordered_json to_json(const StatsReport& report) {
    const auto& c = report.counts;
    nlohmann::ordered_json j;
    j["counts"] = {{"total", c.total}, {"with_metrics", c.with_metrics}, {"scored", c.scored},
                   {"captioned", c.captioned}, {"S", c.S}, {"S_G", c.SG}, {"S_E", c.SE},
                   {"S_A", c.SA}, {"selected", c.selected}};
    auto hs = nlohmann::ordered_json::array();
    for (const auto& h : report.histograms) {
        nlohmann::ordered_json e;
        e["name"] = h.name;
        e["samples"] = h.samples;
        e["edges"] = h.edges;
        e["counts"] = h.counts;
        hs.push_back(std::move(e));
    }
    j["histograms"] = std::move(hs);
    return j;
}

std::string to_text(const StatsReport& report) {
    const auto& c = report.counts;
    std::string out = "subset        count\n";
    auto row = [&](const char* name, std::size_t n) { out += fmt::format("{:<12}{:>7}\n", name, n); };
    row("total", c.total);
    row("metrics", c.with_metrics);
    row("scored", c.scored);
    row("captioned", c.captioned);
    row("S", c.S);
    row("S_G", c.SG);
    row("S_E", c.SE);
    row("S_A", c.SA);
    row("selected", c.selected);
    for (const auto& h : report.histograms) {
        out += fmt::format("\n{} ({} samples)\n", h.name, h.samples);
        for (std::size_t b = 0; b < h.counts.size(); ++b)
            out += fmt::format("  [{:>12.6g}, {:>12.6g}{} {:>7}\n", h.edges[b], h.edges[b + 1],
                               b + 1 == h.counts.size() ? "]" : ")", h.counts[b]);
    }
    return out;
}

} // namespace uhr::curation

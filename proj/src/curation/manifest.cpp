#include "uhr/curation/manifest.hpp"

#include "uhr/common/error.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace uhr::curation {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

void append_real(std::string& out, double v) {
    if (!std::isfinite(v)) throw InvalidInput(fmt::format("non-finite value {} in manifest record", v));
    out += fmt::format("{:.9g}", static_cast<double>(static_cast<float>(v)));
}

void append_string(std::string& out, const std::string& s) {
    out += json(s).dump(-1, ' ', false, json::error_handler_t::replace);
}

const char* boolean(bool b) { return b ? "true" : "false"; }

} // namespace

std::string to_manifest_line(const ImageRecord& r) {
    std::string out = "{\"path\":";
    append_string(out, r.path);
    out += fmt::format(",\"width\":{},\"height\":{},\"metrics\":", r.width, r.height);
    if (!r.metrics) {
        out += "null";
    } else {
        const auto& m = *r.metrics;
        out += "{\"laplacian_var\":";
        append_real(out, m.laplacian_var);
        out += ",\"sobel_edge_density\":";
        append_real(out, m.sobel_edge_density);
        out += ",\"glcm\":[";
        for (std::size_t d = 0; d < m.glcm.size(); ++d) {
            if (d) out += ',';
            out += "{\"contrast\":";
            append_real(out, m.glcm[d].contrast);
            out += ",\"entropy\":";
            append_real(out, m.glcm[d].entropy);
            out += ",\"correlation\":";
            append_real(out, m.glcm[d].correlation);
            out += ",\"degenerate\":";
            out += boolean(m.glcm[d].degenerate);
            out += '}';
        }
        out += "],\"glcm_score\":";
        append_real(out, m.glcm_score);
        out += ",\"shannon_entropy\":";
        append_real(out, m.shannon_entropy);
        out += ",\"aesthetic\":";
        if (m.aesthetic) {
            append_real(out, *m.aesthetic);
        } else {
            out += "null";
        }
        out += '}';
    }
    out += ",\"caption\":";
    if (r.caption) {
        append_string(out, *r.caption);
    } else {
        out += "null";
    }
    out += ",\"caption_len\":";
    out += r.caption_len ? fmt::format("{}", *r.caption_len) : "null";
    out += fmt::format(",\"in_S\":{},\"in_SG\":{},\"in_SE\":{},\"in_SA\":{},\"selected\":{}}}",
                       boolean(r.in_S), boolean(r.in_SG), boolean(r.in_SE), boolean(r.in_SA),
                       boolean(r.selected));
    return out;
}

namespace {

class Fields {
public:
    Fields(const json& obj, std::size_t line, std::initializer_list<const char*> keys) : obj_(obj), line_(line) {
        if (!obj.is_object()) throw ParseError(line, "expected a JSON object");
        if (obj.size() != keys.size())
            throw ParseError(line, fmt::format("expected {} keys, found {}", keys.size(), obj.size()));
        for (const char* k : keys)
            if (!obj.contains(k)) throw ParseError(line, fmt::format("missing key '{}'", k));
    }

    const json& operator[](const char* key) const { return obj_.at(key); }

    double real(const char* key) const {
        const auto& v = obj_.at(key);
        if (!v.is_number()) throw ParseError(line_, fmt::format("'{}' is not a number", key));
        return static_cast<double>(static_cast<float>(v.get<double>()));
    }
    std::optional<double> opt_real(const char* key) const {
        if (obj_.at(key).is_null()) return std::nullopt;
        return real(key);
    }
    std::size_t count(const char* key) const {
        const auto& v = obj_.at(key);
        if (!v.is_number_unsigned()) throw ParseError(line_, fmt::format("'{}' is not a nonnegative integer", key));
        return v.get<std::size_t>();
    }
    bool flag(const char* key) const {
        const auto& v = obj_.at(key);
        if (!v.is_boolean()) throw ParseError(line_, fmt::format("'{}' is not a boolean", key));
        return v.get<bool>();
    }
    std::string text(const char* key) const {
        const auto& v = obj_.at(key);
        if (!v.is_string()) throw ParseError(line_, fmt::format("'{}' is not a string", key));
        return v.get<std::string>();
    }

private:
    const json& obj_;
    std::size_t line_;
};

} // namespace

ImageRecord parse_manifest_line(const std::string& line, std::size_t line_no) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw ParseError(line_no, std::string("malformed manifest line: ") + e.what());
    }

    const Fields f(j, line_no, {"path", "width", "height", "metrics", "caption", "caption_len", "in_S",
                                "in_SG", "in_SE", "in_SA", "selected"});
    ImageRecord r;
    r.path = f.text("path");
    r.width = f.count("width");
    r.height = f.count("height");
    if (r.width == 0 || r.height == 0) throw ParseError(line_no, "width and height must be positive");

    if (!f["metrics"].is_null()) {
        const Fields m(f["metrics"], line_no, {"laplacian_var", "sobel_edge_density", "glcm", "glcm_score",
                                               "shannon_entropy", "aesthetic"});
        metrics::MetricVector mv;
        mv.laplacian_var = m.real("laplacian_var");
        mv.sobel_edge_density = m.real("sobel_edge_density");
        const auto& g = m["glcm"];
        if (!g.is_array() || g.size() != mv.glcm.size())
            throw ParseError(line_no, fmt::format("'glcm' must be an array of {} entries", mv.glcm.size()));
        for (std::size_t d = 0; d < mv.glcm.size(); ++d) {
            const Fields gf(g[d], line_no, {"contrast", "entropy", "correlation", "degenerate"});
            mv.glcm[d] = {gf.real("contrast"), gf.real("entropy"), gf.real("correlation"), gf.flag("degenerate")};
        }
        mv.glcm_score = m.real("glcm_score");
        mv.shannon_entropy = m.real("shannon_entropy");
        mv.aesthetic = m.opt_real("aesthetic");
        r.metrics = mv;
    }

    if (!f["caption"].is_null()) r.caption = f.text("caption");
    if (!f["caption_len"].is_null()) r.caption_len = f.count("caption_len");
    r.in_S = f.flag("in_S");
    r.in_SG = f.flag("in_SG");
    r.in_SE = f.flag("in_SE");
    r.in_SA = f.flag("in_SA");
    r.selected = f.flag("selected");
    return r;
}

void write_manifest(const std::vector<ImageRecord>& records, const fs::path& path) {
    std::string body;
    for (const auto& r : records) {
        body += to_manifest_line(r);
        body += '\n';
    }
    // Write-then-rename so a crash never leaves a half-written manifest.
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write manifest " + tmp.string());
        out << body;
        if (!out.flush()) throw IoError("cannot write manifest " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot replace manifest " + path.string() + ": " + ec.message());
}

std::vector<ImageRecord> read_manifest(const fs::path& path, ReadOptions opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open manifest " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    std::vector<ImageRecord> records;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        ++line_no;
        const std::size_t nl = text.find('\n', pos);
        const bool terminated = nl != std::string::npos;
        const std::string line = text.substr(pos, terminated ? nl - pos : std::string::npos);
        pos = terminated ? nl + 1 : text.size();
        try {
            records.push_back(parse_manifest_line(line, line_no));
        } catch (const ParseError&) {
            if (opts.tolerate_truncated_tail && !terminated) break;
            throw;
        }
    }
    return records;
}

} // namespace uhr::curation

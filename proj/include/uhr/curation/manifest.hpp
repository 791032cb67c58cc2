#pragma once

#include "uhr/curation/record.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace uhr::curation {

// Manifest = JSON lines, one ImageRecord per line, keys in a fixed order:
//
//   path, width, height,
//   metrics: null | {laplacian_var, sobel_edge_density,
//                    glcm: [{contrast, entropy, correlation, degenerate} x 4],
//                    glcm_score, shannon_entropy, aesthetic: null | number},
//   caption: null | string, caption_len: null | integer,
//   in_S, in_SG, in_SE, in_SA, selected
//
// Reals are written with 9 significant digits (single-precision round trip).

std::string to_manifest_line(const ImageRecord& r);

// Throws ParseError(line_no) on malformed input.
ImageRecord parse_manifest_line(const std::string& line, std::size_t line_no);

void write_manifest(const std::vector<ImageRecord>& records, const std::filesystem::path& path);

struct ReadOptions {
    // Drop an unparseable last line that lacks its newline (an interrupted
    // append) instead of failing.
    bool tolerate_truncated_tail = false;
};

std::vector<ImageRecord> read_manifest(const std::filesystem::path& path, ReadOptions opts = {});

} // namespace uhr::curation

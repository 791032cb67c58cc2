#pragma once

#include "uhr/curation/record.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace uhr::curation {

struct Exclusion {
    std::string path;
    std::string reason;
};

struct ScanResult {
    std::vector<ImageRecord> records;  // sorted by path
    std::vector<Exclusion> excluded;   // sorted by path
};

// Corpus-relative paths of every file with an image extension under root,
// recursively, sorted lexicographically. Throws IoError if root is not a
// readable directory.
std::vector<std::string> list_image_files(const std::filesystem::path& root);

// Decodes every image for its dimensions. Undecodable files are excluded
// and reported on stderr.
ScanResult scan_corpus(const std::filesystem::path& root, std::size_t workers = 1);

// Called from the collecting thread each time a record is finished.
using RecordSink = std::function<void(const ImageRecord&)>;

// Decodes and measures the given corpus files on up to `workers` threads.
// Output order is by path regardless of scheduling.
ScanResult compute_corpus_metrics(const std::filesystem::path& root,
                                  const std::vector<std::string>& paths,
                                  const SelectionConfig& cfg, std::size_t workers,
                                  const RecordSink& on_record = {});

// Metrics for one decoded image, rounded to manifest precision.
metrics::MetricVector measure(const metrics::RgbImage& rgb, const SelectionConfig& cfg);

} // namespace uhr::curation

#pragma once

#include "uhr/curation/record.hpp"

#include <filesystem>
#include <string_view>
#include <vector>

namespace uhr::curation {

// Whitespace-separated word count.
std::size_t word_count(std::string_view text);

// Sidecar for corpus path "a/b.png" is caption_dir/"a/b.txt".
std::filesystem::path caption_path(const std::filesystem::path& caption_dir, std::string_view record_path);

// Attaches caption text and word count; records without a sidecar get
// neither. Returns the number of captions attached. Throws IoError if
// caption_dir is not a readable directory.
std::size_t merge_captions(std::vector<ImageRecord>& records, const std::filesystem::path& caption_dir);

} // namespace uhr::curation

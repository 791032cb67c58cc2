#pragma once

#include "uhr/metrics/gray_image.hpp"

#include <filesystem>

namespace uhr::curation {

// Case-insensitive check of the file extension against the decodable formats.
bool has_image_extension(const std::filesystem::path& p);

// Decodes any supported file to 8-bit RGB. Grayscale is replicated across
// channels, alpha is dropped, 16-bit samples are scaled to 8 bits.
// Throws IoError if the file cannot be decoded.
metrics::RgbImage decode_rgb(const std::filesystem::path& p);

// Writes 8-bit RGB as PNG (used to build synthetic corpora).
void write_png(const std::filesystem::path& p, const metrics::RgbImage& img);

} // namespace uhr::curation

#include "uhr/curation/image_io.hpp"

#include "uhr/common/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <string>

namespace uhr::curation {

bool has_image_extension(const std::filesystem::path& p) {
    static constexpr std::array<std::string_view, 10> kExt = {
        ".png", ".jpg", ".jpeg", ".bmp", ".tif", ".tiff", ".webp", ".ppm", ".pgm", ".pnm"};
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return std::find(kExt.begin(), kExt.end(), ext) != kExt.end();
}

metrics::RgbImage decode_rgb(const std::filesystem::path& p) {
    cv::Mat raw;
    try {
        raw = cv::imread(p.string(), cv::IMREAD_UNCHANGED);
    } catch (const cv::Exception& e) {
        throw IoError("cannot decode " + p.string() + ": " + e.what());
    }
    if (raw.empty()) throw IoError("cannot decode " + p.string());

    cv::Mat eight;
    if (raw.depth() == CV_8U) {
        eight = raw;
    } else if (raw.depth() == CV_16U) {
        raw.convertTo(eight, CV_8U, 1.0 / 257.0);
    } else {
        raw.convertTo(eight, CV_8U);
    }

    metrics::RgbImage out;
    out.width = static_cast<std::size_t>(eight.cols);
    out.height = static_cast<std::size_t>(eight.rows);
    out.data.resize(out.width * out.height * 3);
    const int ch = eight.channels();
    if (ch != 1 && ch != 3 && ch != 4)
        throw IoError("unsupported channel count in " + p.string());
    for (int y = 0; y < eight.rows; ++y) {
        const auto* row = eight.ptr<std::uint8_t>(y);
        for (int x = 0; x < eight.cols; ++x) {
            auto* dst = &out.data[(static_cast<std::size_t>(y) * out.width + x) * 3];
            const auto* src = row + static_cast<std::size_t>(x) * ch;
            if (ch == 1) {
                dst[0] = dst[1] = dst[2] = src[0];
            } else {
                // OpenCV stores BGR(A).
                dst[0] = src[2];
                dst[1] = src[1];
                dst[2] = src[0];
            }
        }
    }
    return out;
}

void write_png(const std::filesystem::path& p, const metrics::RgbImage& img) {
    cv::Mat bgr(static_cast<int>(img.height), static_cast<int>(img.width), CV_8UC3);
    for (std::size_t y = 0; y < img.height; ++y) {
        auto* row = bgr.ptr<std::uint8_t>(static_cast<int>(y));
        for (std::size_t x = 0; x < img.width; ++x) {
            const auto* src = &img.data[(y * img.width + x) * 3];
            row[3 * x + 0] = src[2];
            row[3 * x + 1] = src[1];
            row[3 * x + 2] = src[0];
        }
    }
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    if (!cv::imwrite(p.string(), bgr)) throw IoError("cannot write " + p.string());
}

} // namespace uhr::curation

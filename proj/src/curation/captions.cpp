#include "uhr/curation/captions.hpp"

#include "uhr/common/error.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace uhr::curation {

namespace fs = std::filesystem;

std::size_t word_count(std::string_view text) {
    std::size_t n = 0;
    bool in_word = false;
    for (unsigned char c : text) {
        const bool space = std::isspace(c) != 0;
        if (!space && !in_word) ++n;
        in_word = !space;
    }
    return n;
}

fs::path caption_path(const fs::path& caption_dir, std::string_view record_path) {
    fs::path p = caption_dir / fs::path(record_path);
    p.replace_extension(".txt");
    return p;
}

std::size_t merge_captions(std::vector<ImageRecord>& records, const fs::path& caption_dir) {
    std::error_code ec;
    if (!fs::is_directory(caption_dir, ec)) throw IoError("caption directory not found: " + caption_dir.string());
    std::size_t attached = 0;
    for (auto& r : records) {
        const fs::path p = caption_path(caption_dir, r.path);
        std::ifstream in(p, std::ios::binary);
        if (!in) {
            r.caption.reset();
            r.caption_len.reset();
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
        r.caption_len = word_count(text);
        r.caption = std::move(text);
        ++attached;
    }
    return attached;
}

} // namespace uhr::curation

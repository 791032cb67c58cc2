#pragma once

#include "uhr/curation/record.hpp"
#include "uhr/metrics/gray_image.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <sys/types.h>
#include <vector>

namespace uhr::curation {

enum class ScorerKind { score_file, subprocess, heuristic };

std::string_view to_string(ScorerKind kind);
ScorerKind parse_scorer_kind(std::string_view s);

// Where aesthetic scores come from. `location` is a score-file path for
// score_file, a shell command line for subprocess, and unused for heuristic.
struct ScorerSpec {
    ScorerKind kind = ScorerKind::heuristic;
    std::string location;
};

struct ScorerOptions {
    std::chrono::milliseconds response_timeout{30000};
    int retries = 2;
};

// JSON-lines of {"path": string, "score": number}. Later lines win.
std::map<std::string, double> read_score_file(const std::filesystem::path& p);

// Colourfulness plus RMS contrast, squashed into [0, 10). Not a learned
// aesthetic model; it only keeps the pipeline runnable offline.
double heuristic_aesthetic(const metrics::RgbImage& rgb);

// Line-protocol client for an external scorer process. Writes
// {"path": ...} per line to the child's stdin and reads
// {"path": ..., "score": ...} per line from its stdout.
class SubprocessScorer {
public:
    SubprocessScorer(std::string command, ScorerOptions opts = {});
    ~SubprocessScorer();
    SubprocessScorer(const SubprocessScorer&) = delete;
    SubprocessScorer& operator=(const SubprocessScorer&) = delete;

    // Score for `path`, or nothing if the child answered without a usable
    // score. Crashes, timeouts and malformed replies restart the child and
    // retry; after the last retry fails, throws ScorerUnavailable.
    std::optional<double> score(const std::string& path);

    // Closes the child's stdin and reaps it. Returns its exit status.
    int close();

    int restarts() const noexcept { return restarts_; }

private:
    void start();
    void kill_child();
    // Throws std::runtime_error on any transport or protocol failure.
    std::optional<double> exchange(const std::string& path);
    std::string read_line();

    std::string command_;
    ScorerOptions opts_;
    pid_t pid_ = -1;
    int fd_ = -1;
    std::string buffer_;
    int restarts_ = 0;
};

struct AestheticReport {
    std::size_t scored = 0;
    std::vector<std::string> unscored;
};

// Fills metrics->aesthetic on every record that has metrics. Records the
// scorer cannot score keep an empty score and are listed in the report.
AestheticReport aesthetic_score(std::vector<ImageRecord>& records, const ScorerSpec& spec,
                                const std::filesystem::path& corpus_root,
                                const ScorerOptions& opts = {});

} // namespace uhr::curation

#include "uhr/curation/scorer.hpp"

#include "uhr/common/error.hpp"
#include "uhr/curation/image_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstring>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

extern char** environ;

namespace uhr::curation {

using json = nlohmann::json;

std::string_view to_string(ScorerKind kind) {
    switch (kind) {
    case ScorerKind::score_file: return "score-file";
    case ScorerKind::subprocess: return "subprocess";
    case ScorerKind::heuristic: return "heuristic";
    }
    return "?";
}

ScorerKind parse_scorer_kind(std::string_view s) {
    if (s == "score-file") return ScorerKind::score_file;
    if (s == "subprocess") return ScorerKind::subprocess;
    if (s == "heuristic") return ScorerKind::heuristic;
    throw InvalidInput(fmt::format("unknown scorer kind '{}'", s));
}

std::map<std::string, double> read_score_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw IoError("cannot open score file " + p.string());
    std::map<std::string, double> scores;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = json::parse(line);
            const auto& score = j.at("score");
            if (!score.is_number()) throw ParseError(n, "score is not a number");
            const double v = score.get<double>();
            if (!std::isfinite(v)) throw ParseError(n, "score is not finite");
            scores[j.at("path").get<std::string>()] = v;
        } catch (const json::exception& e) {
            throw ParseError(n, std::string("score file ") + p.string() + ": " + e.what());
        }
    }
    return scores;
}

double heuristic_aesthetic(const metrics::RgbImage& rgb) {
    const std::size_t n = rgb.width * rgb.height;
    if (n == 0) throw InvalidInput("empty image");
    double srg = 0, syb = 0, srg2 = 0, syb2 = 0, sl = 0, sl2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rgb.data[3 * i], g = rgb.data[3 * i + 1], b = rgb.data[3 * i + 2];
        const double rg = r - g;
        const double yb = 0.5 * (r + g) - b;
        const double l = (0.299 * r + 0.587 * g + 0.114 * b) / 255.0;
        srg += rg; srg2 += rg * rg;
        syb += yb; syb2 += yb * yb;
        sl += l; sl2 += l * l;
    }
    const double dn = static_cast<double>(n);
    auto var = [dn](double s, double s2) { return std::max(0.0, s2 / dn - (s / dn) * (s / dn)); };
    const double colourfulness = std::sqrt(var(srg, srg2) + var(syb, syb2)) +
                                 0.3 * std::hypot(srg / dn, syb / dn);
    const double rms_contrast = std::sqrt(var(sl, sl2));
    return 5.0 * std::tanh(colourfulness / 50.0) + 5.0 * std::tanh(4.0 * rms_contrast);
}

// ---------------------------------------------------------------- subprocess

SubprocessScorer::SubprocessScorer(std::string command, ScorerOptions opts)
    : command_(std::move(command)), opts_(opts) {
    start();
}

SubprocessScorer::~SubprocessScorer() {
    try {
        close();
    } catch (...) {
    }
}

void SubprocessScorer::start() {
    int sv[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0)
        throw ScorerUnavailable(fmt::format("socketpair failed: {}", std::strerror(errno)));

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, sv[1], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, sv[1], STDOUT_FILENO);

    // Own process group, so killing it also reaches whatever the shell forked.
    posix_spawnattr_t attr;
    posix_spawnattr_init(&attr);
    posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
    posix_spawnattr_setpgroup(&attr, 0);

    const char* argv[] = {"/bin/sh", "-c", command_.c_str(), nullptr};
    pid_t pid;
    const int rc = posix_spawn(&pid, "/bin/sh", &actions, &attr, const_cast<char* const*>(argv), environ);
    posix_spawn_file_actions_destroy(&actions);
    posix_spawnattr_destroy(&attr);
    ::close(sv[1]);
    if (rc != 0) {
        ::close(sv[0]);
        throw ScorerUnavailable(fmt::format("cannot start scorer '{}': {}", command_, std::strerror(rc)));
    }
    pid_ = pid;
    fd_ = sv[0];
    buffer_.clear();
}

void SubprocessScorer::kill_child() {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
    if (pid_ > 0) {
        ::kill(-pid_, SIGKILL);
        ::waitpid(pid_, nullptr, 0);
        pid_ = -1;
    }
}

int SubprocessScorer::close() {
    if (pid_ <= 0) return 0;
    ::shutdown(fd_, SHUT_WR);
    int status = 0;
    const auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(5);
    for (;;) {
        const pid_t r = ::waitpid(pid_, &status, WNOHANG);
        if (r == pid_) break;
        if (r < 0 || std::chrono::steady_clock::now() > deadline) {
            kill_child();
            return -1;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    pid_ = -1;
    ::close(fd_);
    fd_ = -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string SubprocessScorer::read_line() {
    const auto deadline = std::chrono::steady_clock::now() + opts_.response_timeout;
    for (;;) {
        if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return line;
        }
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) throw std::runtime_error("timed out waiting for a response");
        pollfd pfd{fd_, POLLIN, 0};
        const int pr = ::poll(&pfd, 1, static_cast<int>(left.count()));
        if (pr < 0) {
            if (errno == EINTR) continue;
            throw std::runtime_error(std::string("poll: ") + std::strerror(errno));
        }
        if (pr == 0) continue;
        char chunk[4096];
        const ssize_t got = ::recv(fd_, chunk, sizeof chunk, 0);
        if (got < 0) {
            if (errno == EINTR) continue;
            throw std::runtime_error(std::string("recv: ") + std::strerror(errno));
        }
        if (got == 0) throw std::runtime_error("scorer closed its output");
        buffer_.append(chunk, static_cast<std::size_t>(got));
    }
}

std::optional<double> SubprocessScorer::exchange(const std::string& path) {
    const std::string request = json{{"path", path}}.dump() + "\n";
    std::size_t sent = 0;
    while (sent < request.size()) {
        const ssize_t n = ::send(fd_, request.data() + sent, request.size() - sent, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw std::runtime_error(std::string("send: ") + std::strerror(errno));
        }
        sent += static_cast<std::size_t>(n);
    }

    const std::string line = read_line();
    json reply;
    try {
        reply = json::parse(line);
    } catch (const json::exception&) {
        throw std::runtime_error("malformed response: " + line);
    }
    if (!reply.is_object() || !reply.contains("path") || reply["path"] != path)
        throw std::runtime_error("response does not match request for " + path);
    if (!reply.contains("score") || !reply["score"].is_number()) return std::nullopt;
    const double v = reply["score"].get<double>();
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<double> SubprocessScorer::score(const std::string& path) {
    std::string last_error;
    for (int attempt = 0; attempt <= opts_.retries; ++attempt) {
        if (pid_ <= 0) {
            start();
            ++restarts_;
        }
        try {
            return exchange(path);
        } catch (const std::runtime_error& e) {
            last_error = e.what();
            std::cerr << fmt::format("scorer failed on {} (attempt {}): {}\n", path, attempt + 1, last_error);
            kill_child();
        }
    }
    throw ScorerUnavailable(fmt::format("scorer '{}' failed on {} after {} retries: {}", command_, path,
                                        opts_.retries, last_error));
}

// ------------------------------------------------------------------ dispatch

AestheticReport aesthetic_score(std::vector<ImageRecord>& records, const ScorerSpec& spec,
                                const std::filesystem::path& corpus_root, const ScorerOptions& opts) {
    AestheticReport report;
    auto assign = [&](ImageRecord& r, std::optional<double> v) {
        r.metrics->aesthetic = v ? std::optional(to_manifest_precision(*v)) : std::nullopt;
        if (v) {
            ++report.scored;
        } else {
            report.unscored.push_back(r.path);
        }
    };

    switch (spec.kind) {
    case ScorerKind::score_file: {
        const auto scores = read_score_file(spec.location);
        for (auto& r : records) {
            if (!r.metrics) continue;
            const auto it = scores.find(r.path);
            assign(r, it == scores.end() ? std::nullopt : std::optional(it->second));
        }
        break;
    }
    case ScorerKind::subprocess: {
        SubprocessScorer scorer(spec.location, opts);
        for (auto& r : records)
            if (r.metrics) assign(r, scorer.score(r.path));
        scorer.close();
        break;
    }
    case ScorerKind::heuristic:
        for (auto& r : records) {
            if (!r.metrics) continue;
            std::optional<double> v;
            try {
                v = heuristic_aesthetic(decode_rgb(corpus_root / r.path));
            } catch (const IoError& e) {
                std::cerr << fmt::format("heuristic scorer: {}\n", e.what());
            }
            assign(r, v);
        }
        break;
    }

    for (const auto& p : report.unscored)
        std::cerr << fmt::format("warning: no aesthetic score for {}; left out of S_A\n", p);
    return report;
}

} // namespace uhr::curation

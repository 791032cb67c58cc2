#include "fixtures.hpp"

#include "uhr/cli/cli.hpp"
#include "uhr/cli/config.hpp"
#include "uhr/common/error.hpp"
#include "uhr/curation/image_io.hpp"
#include "uhr/curation/manifest.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>

using namespace uhr;
using uhr::testing::TempDir;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "uhrtool");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

void make_corpus(const std::filesystem::path& dir, int n) {
    for (int i = 0; i < n; ++i)
        curation::write_png(dir / ("img_" + std::to_string(i) + ".png"), uhr::testing::textured_rgb(24 + i, 20, i, 0.2 * (i % 6)));
}

} // namespace

TEST_CASE("config defaults") {
    const cli::RunConfig cfg;
    CHECK(cfg.selection.top_fraction == 0.5);
    CHECK(cfg.selection.min_avg_resolution == 3000.0);
    CHECK(cfg.train.beta.alpha == 2.0);
    CHECK(cfg.train.beta.beta == 4.0);
    CHECK(cfg.train.seed == 42);
    CHECK_NOTHROW(cli::validate(cfg));
}

TEST_CASE("config keys round trip through JSON") {
    cli::RunConfig cfg;
    cli::set_from_string(cfg, "top-fraction", "0.25");
    cli::set_from_string(cfg, "scorer-kind", "score-file");
    cli::set_from_string(cfg, "use-dots", "false");
    cli::set_from_string(cfg, "alpha", "3");
    const auto j = cli::to_json(cfg);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == cli::config_keys());
    cli::RunConfig back;
    cli::apply_json(back, nlohmann::json::parse(j.dump()));
    CHECK(cli::to_json(back) == j);
    CHECK(back.selection.top_fraction == 0.25);
    CHECK_FALSE(back.train.use_dots);

    cli::RunConfig bad;
    CHECK_THROWS_AS(cli::apply_json(bad, nlohmann::json{{"no-such-key", 1}}), InvalidInput);
    CHECK_THROWS_AS(cli::apply_json(bad, nlohmann::json{{"steps", "many"}}), InvalidInput);
    CHECK_THROWS_AS(cli::set_from_string(bad, "steps", "-3"), InvalidInput);
    bad.selection.top_fraction = 2.0;
    CHECK_THROWS_AS(cli::validate(bad), InvalidInput);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::kExitInvalid);
    CHECK(run({"bogus"}).code == cli::kExitInvalid);
    CHECK(run({"dots-sample", "--alpha", "-1"}).code == cli::kExitInvalid);
    CHECK(run({"dots-sample", "--no-such-flag", "1"}).code == cli::kExitInvalid);
    CHECK(run({"scan"}).code == cli::kExitInvalid);
    TempDir dir;
    CHECK(run({"scan", "--input", (dir / "missing").string(), "--output", (dir / "o.jsonl").string()}).code ==
          cli::kExitRuntime);
    CHECK(run({"stats", "--manifest", (dir / "missing.jsonl").string()}).code == cli::kExitRuntime);
    write_text(dir / "cfg.json", "{\"unknown\": 1}");
    CHECK(run({"dots-sample", "--config", (dir / "cfg.json").string()}).code == cli::kExitInvalid);
    CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("dots-sample") {
    const Outcome o = run({"dots-sample", "-n", "20000", "--histogram", "20"});
    REQUIRE(o.code == 0);
    const auto j = nlohmann::json::parse(o.out);
    CHECK(j["mode"].get<double>() == doctest::Approx(0.25));
    CHECK(j["timestep_convention"] == "t=0:data,t=1:noise");
    std::size_t total = 0;
    for (auto c : j["histogram"]["counts"]) total += c.get<std::size_t>();
    CHECK(total == 20000);
    // Flags override the config file, which overrides defaults.
    TempDir dir;
    write_text(dir / "cfg.json", "{\"samples\": 7, \"alpha\": 3}");
    const Outcome f = run({"dots-sample", "--config", (dir / "cfg.json").string(), "--alpha", "5"});
    REQUIRE(f.code == 0);
    const auto k = nlohmann::json::parse(f.out);
    CHECK(k["samples"].size() == 7);
    CHECK(k["alpha"] == 5.0);
    CHECK(run({"dots-sample", "-n", "5"}).out == run({"dots-sample", "-n", "5"}).out);
}

TEST_CASE("select agrees with the oracle") {
    TempDir dir;
    const auto records = uhr::testing::controlled_corpus();
    curation::write_manifest(records, dir / "in.jsonl");
    // The score file supplies the aesthetics already embedded in the corpus.
    std::string scores;
    for (const auto& r : records)
        if (r.metrics->aesthetic)
            scores += nlohmann::json{{"path", r.path}, {"score", *r.metrics->aesthetic}}.dump() + "\n";
    write_text(dir / "scores.jsonl", scores);
    const Outcome o = run({"select", "--manifest", (dir / "in.jsonl").string(), "--output", (dir / "out.jsonl").string(),
                           "--scorer-kind", "score-file", "--scorer-location", (dir / "scores.jsonl").string()});
    REQUIRE(o.code == 0);
    const auto out = curation::read_manifest(dir / "out.jsonl");
    const auto oracle = uhr::testing::selection_oracle(records, curation::SelectionConfig{});
    REQUIRE(out.size() == records.size());
    std::set<std::string> selected;
    for (const auto& r : out)
        if (r.selected) selected.insert(r.path);
    CHECK(selected == oracle.selected);
    CHECK(std::filesystem::exists(dir / "out.jsonl.config.json"));
}

TEST_CASE("metrics pipeline resumes and is deterministic") {
    TempDir dir;
    make_corpus(dir / "corpus", 6);
    const std::string corpus = (dir / "corpus").string();
    REQUIRE(run({"metrics", "--input", corpus, "--output", (dir / "a.jsonl").string()}).code == 0);
    REQUIRE(run({"metrics", "--input", corpus, "--output", (dir / "b.jsonl").string(), "--workers", "3"}).code == 0);
    const std::string full = read_text(dir / "a.jsonl");
    CHECK(full == read_text(dir / "b.jsonl"));

    // Interrupted run: two complete lines and a torn third.
    std::size_t cut = 0;
    for (int i = 0; i < 2; ++i) cut = full.find('\n', cut) + 1;
    write_text(dir / "c.jsonl", full.substr(0, cut + 30));
    const Outcome o = run({"metrics", "--input", corpus, "--output", (dir / "c.jsonl").string()});
    REQUIRE(o.code == 0);
    CHECK(o.out.find("2 resumed") != std::string::npos);
    CHECK(read_text(dir / "c.jsonl") == full);

    // The config echo reproduces the run.
    const std::string echo = (dir / "a.jsonl.config.json").string();
    const Outcome again = run({"metrics", "--config", echo, "--output", (dir / "d.jsonl").string()});
    REQUIRE(again.code == 0);
    CHECK(read_text(dir / "d.jsonl") == full);
}

TEST_CASE("curation subcommands chain") {
    TempDir dir;
    make_corpus(dir / "corpus", 4);
    std::filesystem::create_directories(dir / "caps");
    write_text(dir / "caps/img_1.txt", "a small textured patch\n");
    const std::string corpus = (dir / "corpus").string();
    REQUIRE(run({"scan", "--input", corpus, "--output", (dir / "scan.jsonl").string()}).code == 0);
    CHECK(curation::read_manifest(dir / "scan.jsonl").size() == 4);
    REQUIRE(run({"metrics", "--input", corpus, "--output", (dir / "m.jsonl").string()}).code == 0);
    REQUIRE(run({"select", "--input", corpus, "--manifest", (dir / "m.jsonl").string(), "--output",
                 (dir / "s.jsonl").string(), "--min-avg-resolution", "10", "--laplacian-min", "0",
                 "--sobel-density-min", "0"})
                .code == 0);
    const auto sel = curation::read_manifest(dir / "s.jsonl");
    for (const auto& r : sel) {
        CHECK(r.in_S);
        CHECK(r.metrics->aesthetic.has_value());
    }
    REQUIRE(run({"caption-merge", "--manifest", (dir / "s.jsonl").string(), "--captions", (dir / "caps").string(),
                 "--output", (dir / "c.jsonl").string()})
                .code == 0);
    const auto cap = curation::read_manifest(dir / "c.jsonl");
    CHECK(cap[1].caption_len == 4);
    const Outcome st = run({"stats", "--manifest", (dir / "c.jsonl").string(), "--output", (dir / "st.json").string()});
    REQUIRE(st.code == 0);
    CHECK(nlohmann::json::parse(read_text(dir / "st.json"))["counts"]["captioned"] == 1);
    REQUIRE(run({"freq-analyze", "--input", corpus, "--output", (dir / "f.json").string(), "--bands", "4"}).code == 0);
    const auto fj = nlohmann::json::parse(read_text(dir / "f.json"));
    CHECK(fj["images"].size() == 4);
}

TEST_CASE("train-toy and compare") {
    TempDir dir;
    REQUIRE(run({"train-toy", "--steps", "5", "--batch-size", "2", "--image-size", "16", "--output",
                 (dir / "t.json").string()})
                .code == 0);
    const auto j = nlohmann::json::parse(read_text(dir / "t.json"));
    CHECK(j["log"].size() == 5);
    CHECK(j["params"]["kernel"].size() == 25);
    CHECK(j["params"]["bias"].size() == 16);
    const Outcome c = run({"compare", "--seeds", "1", "--steps", "5", "--batch-size", "2", "--image-size", "16",
                           "--eval-count", "2", "--output", (dir / "c.json").string()});
    REQUIRE(c.code == 0);
    CHECK(nlohmann::json::parse(read_text(dir / "c.json"))["seeds"].size() == 1);
}

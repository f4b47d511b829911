#include <doctest.h>

#include <unistd.h>

#include <fstream>

#include "shotscout/common/subprocess.hpp"
#include "shotscout/harness/config.hpp"
#include "shotscout/model/serde.hpp"
#include "support/minibench.hpp"
#include "support/testutil.hpp"

using namespace shotscout;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path bin_dir() {
    char buf[4096];
    ssize_t n = ::readlink("/proc/self/exe", buf, sizeof(buf) - 1);
    REQUIRE(n > 0);
    buf[n] = '\0';
    return fs::path(buf).parent_path();
}

fs::path cli() { return bin_dir() / "shotscout"; }

} // namespace

TEST_CASE("cli: quotas subcommand prints the full plan set") {
    auto result = run_command({cli().string(), "bench", "quotas"});
    REQUIRE(result.exit_code == 0);
    auto out = json::parse(result.out);
    CHECK(out["grand_total"] == 1210);
    CHECK(out["plans"].size() == 6);
}

TEST_CASE("cli: usage errors exit with 2") {
    CHECK(run_command({cli().string(), "no-such-subcommand"}).exit_code == 2);
    CHECK(run_command({cli().string()}).exit_code == 2);
    CHECK(run_command({cli().string(), "--help"}).exit_code == 0);
}

TEST_CASE("cli: validate returns 0 for clean records and 1 for broken ones") {
    testutil::TempDir tmp;
    auto good = testutil::make_sample("ok", "Film");
    auto good_path = testutil::write_file(tmp / "good.json", json(good).dump());

    json bad = good;
    bad["context_description_en"] = json::array({"a", "b", "c"});
    auto bad_path = testutil::write_file(tmp / "bad.json", bad.dump());

    CHECK(run_command({cli().string(), "bench", "validate", good_path.string()}).exit_code == 0);
    auto failing = run_command({cli().string(), "bench", "validate", bad_path.string()});
    CHECK(failing.exit_code == 1);
    auto report = json::parse(failing.out);
    CHECK(report[0]["passed"] == false);
}

TEST_CASE("cli: sample extracts a grid from a local clip") {
    testutil::TempDir tmp;
    backends::SubprocessExtractor tool;
    auto clip = testutil::make_clip(tool, tmp / "clips", "c.mp4", 6.0, 40);

    auto result = run_command({cli().string(), "--workdir", (tmp / "work").string(), "sample",
                               "--video", clip.string(), "--sampling", "flat-3"});
    REQUIRE(result.exit_code == 0);
    auto grid = json::parse(result.out).get<model::FrameGrid>();
    CHECK(grid.num_frames == 3);
    for (const auto& frame : grid.frames) CHECK(fs::exists(frame.path));
}

TEST_CASE("cli: clip judge runs offline on the hash embedding") {
    testutil::TempDir tmp;
    auto img = testutil::write_file(tmp / "same.jpg", "identical bytes");
    auto result = run_command({cli().string(), "judge", "--description", "anything", "--gt",
                               img.string(), "--selected", img.string(), "--clip"});
    REQUIRE(result.exit_code == 0);
    CHECK(json::parse(result.out)["matched"] == true);
}

TEST_CASE("cli: run replays the mini-benchmark with zero live calls") {
    testutil::TempDir root("clirun");
    auto bench = testutil::build_minibench(root.path());

    // persist the recording config so the CLI run matches its fingerprint
    json config_json = bench.config;
    auto config_path = testutil::write_file(root / "config.json", config_json.dump());

    const fs::path workdir = root / "work";
    auto result = run_command({cli().string(), "--workdir", workdir.string(), "--config",
                               config_path.string(), "--replay", bench.journal_dir.string(),
                               "run", "--samples", bench.samples_dir.string(), "--run-id",
                               "cli"});
    REQUIRE(result.exit_code == 0);
    CHECK(result.err.find("live=0") != std::string::npos);

    auto report = json::parse(result.out);
    CHECK(report["num_samples"] == 10);
    CHECK(report["average"].get<double>() == doctest::Approx(500.0 / 6.0));
    CHECK(fs::exists(workdir / "runs/cli/report.json"));

    // score re-derives the same numbers from the traces alone
    auto rescored = run_command({cli().string(), "score", "--run",
                                 (workdir / "runs/cli").string()});
    REQUIRE(rescored.exit_code == 0);
    auto rescored_json = json::parse(rescored.out);
    CHECK(rescored_json["average"] == report["average"]);
    CHECK(rescored_json["per_task"] == report["per_task"]);
}

TEST_CASE("cli: bench build gates a local clip offline") {
    testutil::TempDir tmp;
    backends::SubprocessExtractor tool;
    auto clip = testutil::make_clip(tool, tmp / "clips", "b.mp4", 20.0, 41);

    auto result = run_command({cli().string(), "--workdir", (tmp / "work").string(), "bench",
                               "build", "--video", clip.string(), "--category", "Dance",
                               "--kind", "shot", "--timestamp", "10"});
    REQUIRE(result.exit_code == 0);
    auto out = json::parse(result.out);
    CHECK(out["accepted"] == true);
    CHECK(out["target_timestamp_s"] == 10.0);
    CHECK(fs::exists(out["assets"]["target_frame"].get<std::string>()));
    CHECK(fs::exists(out["assets"]["audio_clip"].get<std::string>()));
}

// Acceptance suite: one pass/fail line per criterion, exit 0 only when all
// criteria hold.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "shotscout/backends/journal.hpp"
#include "shotscout/backends/media.hpp"
#include "shotscout/backends/mocks.hpp"
#include "shotscout/benchkit/bundle.hpp"
#include "shotscout/benchkit/filters.hpp"
#include "shotscout/benchkit/quota.hpp"
#include "shotscout/benchkit/validate.hpp"
#include "shotscout/generator/generator.hpp"
#include "shotscout/harness/pipeline.hpp"
#include "shotscout/harness/scoring.hpp"
#include "shotscout/judge/judge.hpp"
#include "shotscout/localizer/localizer.hpp"
#include "shotscout/model/serde.hpp"
#include "support/minibench.hpp"
#include "support/testutil.hpp"

using namespace shotscout;
namespace fs = std::filesystem;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw Failure(message);
}

template <typename T>
void require_eq(const T& got, const T& want, const std::string& what) {
    if (!(got == want)) {
        std::ostringstream ss;
        ss << what << ": got " << got << ", want " << want;
        throw Failure(ss.str());
    }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// 1. Average reproduction from the published per-task accuracies
// ---------------------------------------------------------------------------

void criterion_1_average_reproduction() {
    const auto start = std::chrono::steady_clock::now();
    using model::ConstraintKind;
    struct Row {
        const char* name;
        std::map<ConstraintKind, double> per_task;
        double published_avg;
    };
    const double na = -1.0;  // marks an absent task column
    auto row = [&](const char* name, double shot, double temporal, double color, double style,
                   double resolution, double audio, double avg) {
        Row r;
        r.name = name;
        r.published_avg = avg;
        auto put = [&](ConstraintKind kind, double value) {
            if (value != na) r.per_task[kind] = value;
        };
        put(ConstraintKind::Shot, shot);
        put(ConstraintKind::Temporal, temporal);
        put(ConstraintKind::Color, color);
        put(ConstraintKind::Style, style);
        put(ConstraintKind::Resolution, resolution);
        put(ConstraintKind::Audio, audio);
        return r;
    };
    const std::vector<Row> rows = {
        row("Human", 85.1, 91.6, 91.4, 83.3, 91.7, 87.5, 88.5),
        row("Gemini-3-Pro", 22.5, 31.0, 15.7, 26.5, 21.0, 30.0, 24.4),
        row("Gemini-2.5-Pro", 23.5, 29.5, 12.9, 17.5, 18.5, 26.5, 21.3),
        row("GPT-5.2", 25.5, 35.5, 15.7, 32.5, 26.0, na, 26.9),
        row("GPT-5-mini", 12.0, 21.0, 10.5, 17.0, 16.0, na, 15.2),
        row("Claude-4.0-Sonnet", 18.0, 30.0, 8.1, 15.5, 19.5, na, 18.1),
        row("Qwen3-Omni-30B-A3B", 19.0, 33.0, 11.4, 18.5, 17.5, 21.0, 20.0),
        row("Qwen3-VL-235B-A22B", 18.5, 28.5, 20.5, 17.0, 18.5, na, 20.6),
    };
    for (const auto& r : rows) {
        const double mean = harness::average_of(r.per_task);
        require(std::abs(mean - r.published_avg) <= 0.2,
                std::string(r.name) + ": mean " + std::to_string(mean) +
                    " deviates more than 0.2 from " + std::to_string(r.published_avg));
    }
    require(seconds_since(start) < 1.0, "criterion 1 exceeded 1 s");
}

// ---------------------------------------------------------------------------
// 2. Sampling law and tier function
// ---------------------------------------------------------------------------

void criterion_2_sampling_law() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> n_dist(1, 10000);
    std::uniform_real_distribution<double> d_dist(1e-6, 1e5);
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = n_dist(rng);
        const double d = d_dist(rng);
        const int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
        const double t = sampler::timestamp_of(i, n, d);
        const double expected = (i + 0.5) / n * d;
        require(std::abs(t - expected) <= 1e-9 * std::max(1.0, std::abs(expected)),
                "timestamp law violated");
        if (i + 1 < n) {
            const double spacing = sampler::timestamp_of(i + 1, n, d) - t;
            require(std::abs(spacing - d / n) <= 1e-9 * std::max(1.0, d / n),
                    "bin-midpoint spacing violated");
        }
        require(sampler::timestamp_of(0, n, d) > 0.0, "t_0 must be positive");
        require(sampler::timestamp_of(n - 1, n, d) < d, "t_{N-1} must stay below D");
    }

    const auto tiers = sampler::SamplingPolicy::closed_source_default();
    require_eq(sampler::frames_for_duration(tiers, 170.0), 64, "tier at 170 s");
    require_eq(sampler::frames_for_duration(tiers, 300.0), 128, "tier at 300 s");
    require_eq(sampler::frames_for_duration(tiers, 700.0), 192, "tier at 700 s");
    const auto flat = sampler::SamplingPolicy::open_source_default();
    for (double d : {10.0, 170.0, 300.0, 700.0, 36000.0}) {
        require_eq(sampler::frames_for_duration(flat, d), 64, "open-source preset");
    }
    require(seconds_since(start) < 5.0, "criterion 2 exceeded 5 s");
}

// ---------------------------------------------------------------------------
// 3. Deterministic end-to-end replay of the mini-benchmark
// ---------------------------------------------------------------------------

void criterion_3_deterministic_replay() {
    const auto start = std::chrono::steady_clock::now();
    testutil::TempDir root("minibench");
    auto bench = testutil::build_minibench(root.path());

    auto journal = std::make_shared<backends::Journal>(bench.journal_dir);
    const size_t journal_rows = journal->size();
    auto samples = harness::load_samples(bench.samples_dir);
    require_eq(samples.size(), size_t{10}, "mini-benchmark sample count");

    auto run_replay = [&](const fs::path& workdir) {
        auto counters = std::make_shared<backends::CallCounters>();
        auto replay = backends::make_replay_backends(
            journal, std::make_shared<backends::SubprocessExtractor>(), counters);
        auto output = harness::run_benchmark(samples, bench.config, replay, workdir, "replay");
        require(counters->live == 0, "replay performed a live backend call");
        return output;
    };

    const fs::path w1 = root / "replay_one";
    const fs::path w2 = root / "replay_two";
    auto first = run_replay(w1);
    auto second = run_replay(w2);

    require(journal->size() == journal_rows, "replay mutated the journal");

    const std::string report_one = slurp(first.report_path);
    const std::string report_two = slurp(second.report_path);
    require(report_one == report_two, "reports are not byte-identical");

    // traces agree too, once wall-clock timings are stripped
    for (const auto& tasked : samples) {
        const std::string rel = "runs/replay/samples/" + tasked.sample.id + "/trace.json";
        auto load = [&](const fs::path& base) {
            nlohmann::json j = nlohmann::json::parse(slurp(base / rel));
            j.erase("stage_timings_ms");
            return j.dump();
        };
        require(load(w1) == load(w2), "trace differs for " + tasked.sample.id);
    }

    for (const auto& record : first.records) {
        require(record.final.success == bench.expected_success.at(record.sample_id),
                record.sample_id + " replayed to an unexpected result");
    }
    require(std::abs(first.report.average - 500.0 / 6.0) < 1e-9,
            "mini-benchmark average drifted");
    require(std::abs(first.report.average - bench.expected_average) < 1e-12,
            "replay disagrees with the recorded run");

    const double elapsed = seconds_since(start);
    require(elapsed < 120.0,
            "criterion 3 exceeded 2 min (" + std::to_string(elapsed) + " s)");
}

// ---------------------------------------------------------------------------
// 4. Generator round-trip
// ---------------------------------------------------------------------------

void criterion_4_generator_round_trip() {
    const std::string example =
        "<think>Y2K fashion + split-screen editing + dance = likely TikTok trend or K-pop "
        "cover. Keywords: style + format.</think><tool_call>{\"name\": \"search_videos\", "
        "\"arguments\": {\"query\": [\"Y2K dance split screen leg warmers\", \"split screen "
        "clone dance phonk\"]}}</tool_call>";
    auto parsed = generator::parse_agent_output(example, 2);
    require(parsed.queries == std::vector<std::string>{"Y2K dance split screen leg warmers",
                                                       "split screen clone dance phonk"},
            "worked example did not parse to the published queries");

    auto expect_kind = [](ErrorKind kind, const std::function<void()>& fn,
                          const std::string& what) {
        try {
            fn();
        } catch (const Error& e) {
            require(e.kind() == kind, what + ": wrong error kind " + to_string(e.kind()));
            return;
        }
        throw Failure(what + ": no error raised");
    };
    expect_kind(ErrorKind::NoToolCall,
                [] { generator::parse_agent_output("just prose", 2); }, "missing tool call");
    expect_kind(ErrorKind::MalformedJson,
                [] { generator::parse_agent_output("<tool_call>{oops</tool_call>", 2); },
                "malformed json");
    expect_kind(ErrorKind::WrongToolName,
                [] {
                    generator::parse_agent_output(
                        "<tool_call>{\"name\": \"other\", \"arguments\": {\"query\": "
                        "[\"a\",\"b\"]}}</tool_call>",
                        2);
                },
                "wrong tool name");

    for (int m = 1; m <= 3; ++m) {
        generator::ExpansionResult r;
        r.think = "think";
        for (int i = 0; i < m; ++i) r.queries.push_back("query " + std::to_string(i));
        auto round = generator::parse_agent_output(generator::print_agent_output(r), m);
        require(round.queries == r.queries, "arity round trip failed for M=" + std::to_string(m));
        for (int wrong = 1; wrong <= 3; ++wrong) {
            if (wrong == m) continue;
            expect_kind(ErrorKind::ArityMismatch,
                        [&] {
                            generator::parse_agent_output(generator::print_agent_output(r),
                                                          wrong);
                        },
                        "arity enforcement M=" + std::to_string(wrong));
        }
    }
}

// ---------------------------------------------------------------------------
// 5. Localizer contract
// ---------------------------------------------------------------------------

void criterion_5_localizer_contract() {
    using localizer::ParseMode;
    auto call = [](int id) {
        return "<tool_call>{\"frame_id\": " + std::to_string(id) + "}</tool_call>";
    };
    const int n = 64;
    require(localizer::parse_frame_choice(call(0), n, ParseMode::Strict) == 0,
            "frame 0 must be accepted");
    require(localizer::parse_frame_choice(call(n - 1), n, ParseMode::Strict) == n - 1,
            "frame N-1 must be accepted");
    try {
        localizer::parse_frame_choice(call(n), n, ParseMode::Strict);
        throw Failure("frame N must be rejected");
    } catch (const Error& e) {
        require(e.kind() == ErrorKind::OutOfRange, "frame N should be OutOfRange");
    }
    try {
        localizer::parse_frame_choice("N/A", n, ParseMode::Strict);
        throw Failure("strict mode must reject N/A");
    } catch (const Error& e) {
        require(e.kind() == ErrorKind::ForbiddenNA, "strict N/A should be ForbiddenNA");
    }
    require(!localizer::parse_frame_choice("N/A", n, ParseMode::Permissive).has_value(),
            "permissive mode must map N/A to no-match");
}

// ---------------------------------------------------------------------------
// 6. Quota plans
// ---------------------------------------------------------------------------

void criterion_6_quota_plans() {
    using model::ConstraintKind;
    const std::map<ConstraintKind, int> expected = {
        {ConstraintKind::Shot, 200},  {ConstraintKind::Temporal, 200},
        {ConstraintKind::Color, 210}, {ConstraintKind::Style, 200},
        {ConstraintKind::Audio, 200}, {ConstraintKind::Resolution, 200},
    };
    int grand = 0;
    for (auto kind : model::all_constraint_kinds()) {
        benchkit::QuotaPlan plan;
        try {
            plan = benchkit::plan_quotas(kind);
        } catch (const Error& e) {
            throw Failure(std::string("IndivisibleQuota fired on a published table: ") +
                          e.what());
        }
        require_eq(plan.total(), expected.at(kind),
                   std::string("total for ") + model::to_string(kind));
        for (const auto& group : plan.subgroups) {
            require(group.per_topic * static_cast<int>(group.topics.size()) == group.total,
                    group.label + " is not an equal split");
        }
        grand += plan.total();
    }
    require_eq(grand, 1210, "grand total");
}

// ---------------------------------------------------------------------------
// 7. Diversity gate and consensus filter
// ---------------------------------------------------------------------------

void criterion_7_diversity_and_consensus() {
    testutil::TempDir tmp("gate");
    auto bundle_with = [&](const std::string& tag) {
        benchkit::AssetBundle bundle;
        auto frame = [&](int i) {
            return testutil::write_file(tmp.path() / tag / ("f" + std::to_string(i) + ".jpg"),
                                        tag + std::to_string(i))
                .string();
        };
        bundle.preceding = {frame(2), frame(1), frame(0)};
        bundle.target_frame = frame(3);
        bundle.following = {frame(4), frame(5), frame(6)};
        return bundle;
    };

    // identical frames: every similarity is 1 -> Reject
    {
        benchkit::AssetBundle bundle;
        auto one = testutil::write_file(tmp.path() / "same.jpg", "identical").string();
        bundle.preceding = {one, one, one};
        bundle.target_frame = one;
        bundle.following = {one, one, one};
        backends::HashEmbedding embed;
        require(benchkit::diversity_gate(bundle, embed, "m") == benchkit::GateDecision::Reject,
                "identical frames must be rejected");
    }
    // one adjacent pair at cosine 0.5 -> Accept
    {
        auto bundle = bundle_with("half");
        backends::FixtureEmbedding embed;
        for (int i = 0; i < 7; ++i) {
            if (i == 3) {
                embed.set("f3.jpg", {0.5f, static_cast<float>(std::sqrt(0.75)), 0, 0});
            } else {
                embed.set("f" + std::to_string(i) + ".jpg", {1, 0, 0, 0});
            }
        }
        require(benchkit::diversity_gate(bundle, embed, "m") == benchkit::GateDecision::Accept,
                "a 0.5-similarity pair must break the all-pairs condition");
    }
    // boundary: every adjacent similarity exactly 0.80 -> Accept (strict >)
    {
        auto bundle = bundle_with("edge");
        backends::FixtureEmbedding embed;
        for (int i = 0; i < 7; ++i) {
            embed.set("f" + std::to_string(i) + ".jpg",
                      i % 2 == 0 ? std::vector<float>{6, 8, 0, 0}
                                 : std::vector<float>{0, 10, 0, 0});
        }
        require(benchkit::diversity_gate(bundle, embed, "m") == benchkit::GateDecision::Accept,
                "similarity exactly 0.80 must accept");
    }

    // consensus: at most 4 rounds, and the traced retry example resolves on round 3
    testutil::write_file(tmp.path() / "frame.jpg", "pixels");
    const std::string frame = (tmp.path() / "frame.jpg").string();
    {
        backends::FixedChat a("Warm Tone"), b("Cold Tone");
        auto result = benchkit::consensus_classify(frame, benchkit::FilterKind::Color, a, "a", b,
                                                   "b");
        require(result.rejected(), "persistent disagreement must reject");
        require_eq(result.rounds, 4, "consensus rounds");
        require_eq(a.calls(), 4, "model A calls");
        require_eq(b.calls(), 4, "model B calls");
    }
    {
        backends::ScriptedChat a;
        a.add_rule({"visual style"},
                   {backends::ScriptedChat::Response::ok("unknown"),
                    backends::ScriptedChat::Response::ok("unknown"),
                    backends::ScriptedChat::Response::ok("Real")});
        backends::FixedChat b("Real");
        auto result =
            benchkit::consensus_classify(frame, benchkit::FilterKind::Style, a, "a", b, "b");
        require(result.label == std::optional<std::string>("Real"),
                "retry example must converge to Real");
        require_eq(result.rounds, 3, "retry example round count");
    }
}

// ---------------------------------------------------------------------------
// 8. Judge tooling
// ---------------------------------------------------------------------------

void criterion_8_judge_tooling() {
    auto m = judge::confusion({true, true, false, false}, {true, false, true, false});
    require(m.tp == 1 && m.fp == 1 && m.fn == 1 && m.tn == 1, "hand-count confusion matrix");
    auto swapped = judge::confusion({true, false, true, false}, {true, true, false, false});
    require(swapped.fp == m.fn && swapped.fn == m.fp && swapped.tp == m.tp && swapped.tn == m.tn,
            "argument swap must transpose fp and fn");

    testutil::TempDir tmp("clip");
    auto gt = testutil::write_file(tmp.path() / "gt.jpg", "gt").string();
    auto near_miss = testutil::write_file(tmp.path() / "near.jpg", "near").string();
    auto edge = testutil::write_file(tmp.path() / "edge.jpg", "edge").string();

    backends::FixtureEmbedding embed;
    embed.set("gt.jpg", {6, 8, 0, 0});
    embed.set("edge.jpg", {5, 5, 7, 1});  // cosine exactly 0.70 against gt
    embed.set("near.jpg", {0.69f, static_cast<float>(std::sqrt(1.0 - 0.69 * 0.69)), 0, 0});
    backends::FixtureEmbedding near_embed;
    near_embed.set("gt.jpg", {1, 0, 0, 0});
    near_embed.set("near.jpg", {0.69f, static_cast<float>(std::sqrt(1.0 - 0.69 * 0.69)), 0, 0});

    require(judge::clip_verdict(gt, edge, embed, "m", 0.7),
            "cosine exactly 0.70 must pass a 0.7 threshold");
    require(!judge::clip_verdict(gt, near_miss, near_embed, "m", 0.7),
            "cosine 0.69 must fail a 0.7 threshold");
}

// ---------------------------------------------------------------------------
// 9. Record validator
// ---------------------------------------------------------------------------

void criterion_9_validator() {
    auto sample = testutil::make_sample("acc", "Film");
    nlohmann::json record = sample;
    auto ok = benchkit::validate_record(record);
    require(ok.passed() && !ok.warned(), "conforming record must pass cleanly");

    nlohmann::json bad_context = record;
    bad_context["context_description_en"] = nlohmann::json::array({"a", "b", "c"});
    require(!benchkit::validate_record(bad_context).passed(),
            "3-element context array must fail");

    nlohmann::json shortish = record;
    shortish["segment_description_ch"] = testutil::cjk_text(233);
    auto warned = benchkit::validate_record(shortish);
    require(warned.passed() && warned.warned(), "233-character description must warn");
}

} // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<void()> run;
    };
    const std::vector<Criterion> criteria = {
        {"1. average reproduction from published per-task accuracies",
         criterion_1_average_reproduction},
        {"2. sampling law and duration tiers", criterion_2_sampling_law},
        {"3. deterministic end-to-end replay of the mini-benchmark",
         criterion_3_deterministic_replay},
        {"4. generator round-trip and arity enforcement", criterion_4_generator_round_trip},
        {"5. localizer frame-choice contract", criterion_5_localizer_contract},
        {"6. quota plans and grand total", criterion_6_quota_plans},
        {"7. diversity gate boundaries and consensus rounds",
         criterion_7_diversity_and_consensus},
        {"8. judge tooling: confusion matrix and similarity threshold",
         criterion_8_judge_tooling},
        {"9. record validator bands", criterion_9_validator},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        try {
            criterion.run();
            std::printf("[PASS] %s\n", criterion.label);
        } catch (const std::exception& e) {
            ++failures;
            std::printf("[FAIL] %s\n       %s\n", criterion.label, e.what());
        }
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d of %zu acceptance criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
    return 0;
}

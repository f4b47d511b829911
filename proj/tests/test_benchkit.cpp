#include <doctest.h>

#include <random>

#include "shotscout/backends/mocks.hpp"
#include "shotscout/benchkit/bundle.hpp"
#include "shotscout/benchkit/filters.hpp"
#include "shotscout/benchkit/quota.hpp"
#include "shotscout/benchkit/validate.hpp"
#include "shotscout/model/serde.hpp"
#include "support/testutil.hpp"

using namespace shotscout;
using namespace shotscout::benchkit;
using nlohmann::json;

TEST_CASE("quota plans reproduce the per-task tables") {
    auto temporal = plan_quotas(model::ConstraintKind::Temporal);
    REQUIRE(temporal.subgroups.size() == 3);
    CHECK(temporal.subgroups[0].label == "pre_context");
    CHECK(temporal.subgroups[0].total == 75);
    CHECK(temporal.subgroups[0].topics ==
          std::vector<std::string>{"Knowledge", "Fitness", "Food"});
    CHECK(temporal.subgroups[0].per_topic == 25);  // 75 over 3 topics
    CHECK(temporal.subgroups[1].per_topic == 25);
    CHECK(temporal.subgroups[2].per_topic == 25);  // 50 over {Film, TV Series}
    CHECK(temporal.total() == 200);

    auto style = plan_quotas(model::ConstraintKind::Style);
    REQUIRE(style.subgroups.size() == 4);
    for (const auto& g : style.subgroups) {
        CHECK(g.total == 50);
        CHECK(g.topics.size() == 1);
        CHECK(g.per_topic == 50);
    }

    auto shot = plan_quotas(model::ConstraintKind::Shot);
    REQUIRE(shot.subgroups.size() == 1);
    CHECK(shot.subgroups[0].topics.size() == 20);
    CHECK(shot.subgroups[0].per_topic == 10);  // 200 over 20 topics
    CHECK(shot.total() == 200);

    auto audio = plan_quotas(model::ConstraintKind::Audio);
    CHECK(audio.subgroups[0].total == 100);
    CHECK(audio.subgroups[0].per_topic == 50);

    auto resolution = plan_quotas(model::ConstraintKind::Resolution);
    CHECK(resolution.total() == 200);
    CHECK(resolution.subgroups[0].label == "1080p");
}

TEST_CASE("quota grand total is 1210 and every split is exact") {
    int grand = 0;
    const std::map<model::ConstraintKind, int> expected = {
        {model::ConstraintKind::Shot, 200},      {model::ConstraintKind::Temporal, 200},
        {model::ConstraintKind::Color, 210},     {model::ConstraintKind::Style, 200},
        {model::ConstraintKind::Audio, 200},     {model::ConstraintKind::Resolution, 200},
    };
    for (auto kind : model::all_constraint_kinds()) {
        QuotaPlan plan;
        CHECK_NOTHROW(plan = plan_quotas(kind));  // IndivisibleQuota never fires
        CHECK(plan.total() == expected.at(kind));
        for (const auto& g : plan.subgroups) {
            CHECK(g.per_topic * static_cast<int>(g.topics.size()) == g.total);
            for (const auto& topic : g.topics) CHECK(model::is_known_topic(topic));
        }
        grand += plan.total();
    }
    CHECK(grand == 1210);
}

TEST_CASE("equal_split raises IndivisibleQuota on a remainder") {
    CHECK_NOTHROW(equal_split("ok", 70, {"A", "B"}));
    try {
        equal_split("bad", 70, {"A", "B", "C"});
        FAIL("expected IndivisibleQuota");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IndivisibleQuota);
    }
}

TEST_CASE("filter answer normalization") {
    CHECK(normalize_filter_answer(FilterKind::Color, "Warm Tone") == "Warm Tone");
    CHECK(normalize_filter_answer(FilterKind::Color, "warm") == "Warm Tone");
    CHECK(normalize_filter_answer(FilterKind::Color, "Cold Tone.") == "Cold Tone");
    CHECK(!normalize_filter_answer(FilterKind::Color, "sparkly").has_value());
    CHECK(normalize_filter_answer(FilterKind::Style, "2D Animation") == "2D Animation");
    CHECK(normalize_filter_answer(FilterKind::Style, "Real") == "Real");
    CHECK(normalize_filter_answer(FilterKind::Style, "live-action") == "Real");
    CHECK(!normalize_filter_answer(FilterKind::Style, "unknown").has_value());
    CHECK(normalize_audio_answer("Human Voice") == "Human Voice");
    CHECK(normalize_audio_answer("background music") == "Background Music");
    CHECK(!normalize_audio_answer("banana").has_value());
}

TEST_CASE("consensus: immediate agreement resolves in one round") {
    testutil::TempDir tmp;
    auto frame = testutil::write_file(tmp / "f.jpg", "frame");
    backends::FixedChat a("Warm Tone"), b("Warm Tone");
    auto result = consensus_classify(frame.string(), FilterKind::Color, a, "ma", b, "mb");
    CHECK(result.label == "Warm Tone");
    CHECK(result.rounds == 1);
    CHECK(a.calls() == 1);
    CHECK(b.calls() == 1);
}

TEST_CASE("consensus: persistent disagreement rejects after 4 rounds") {
    testutil::TempDir tmp;
    auto frame = testutil::write_file(tmp / "f.jpg", "frame");
    backends::FixedChat a("Warm Tone"), b("Cold Tone");
    auto result = consensus_classify(frame.string(), FilterKind::Color, a, "ma", b, "mb");
    CHECK(result.rejected());
    CHECK(result.rounds == 4);  // 1 + 3 retries
    CHECK(a.calls() == 4);
    CHECK(b.calls() == 4);  // 2 model calls per round
}

TEST_CASE("consensus: unknown answers retry and can recover on round 3") {
    testutil::TempDir tmp;
    auto frame = testutil::write_file(tmp / "f.jpg", "frame");
    backends::ScriptedChat a;
    a.add_rule({"visual style"}, {backends::ScriptedChat::Response::ok("unknown"),
                                  backends::ScriptedChat::Response::ok("unknown"),
                                  backends::ScriptedChat::Response::ok("Real")});
    backends::FixedChat b("Real");
    auto result = consensus_classify(frame.string(), FilterKind::Style, a, "ma", b, "mb");
    CHECK(result.label == "Real");
    CHECK(result.rounds == 3);
    CHECK(a.calls() == 3);
    CHECK(b.calls() == 3);
}

TEST_CASE("audio classification is single-model") {
    testutil::TempDir tmp;
    auto clip = testutil::write_file(tmp / "a.mp3", "mp3");
    backends::FixedChat voice("Ambient Sound");
    CHECK(classify_audio(clip.string(), voice, "m") == "Ambient Sound");
    backends::FixedChat junk("whistling noises");
    CHECK(!classify_audio(clip.string(), junk, "m").has_value());
}

namespace {

// Captures the timestamps handed to the extractor.
class SpyExtractor : public backends::MediaExtractor {
public:
    explicit SpyExtractor(std::shared_ptr<backends::MediaExtractor> inner)
        : inner_(std::move(inner)) {}

    backends::ProbeInfo probe(const std::filesystem::path& media) override {
        return inner_->probe(media);
    }
    void extract_frame(const std::filesystem::path& video, double t,
                       const std::filesystem::path& out) override {
        inner_->extract_frame(video, t, out);
    }
    void extract_frames(const std::filesystem::path& video, const std::vector<double>& ts,
                        const std::filesystem::path& out) override {
        last_batch = ts;
        inner_->extract_frames(video, ts, out);
    }
    void extract_audio(const std::filesystem::path& video, const std::filesystem::path& out,
                       std::optional<std::pair<double, double>> window) override {
        last_window = window;
        inner_->extract_audio(video, out, window);
    }

    std::vector<double> last_batch;
    std::optional<std::pair<double, double>> last_window;

private:
    std::shared_ptr<backends::MediaExtractor> inner_;
};

} // namespace

TEST_CASE("bundle extraction: frames at one-second offsets, audio over ten seconds") {
    testutil::TempDir tmp;
    backends::SubprocessExtractor tool;
    auto clip = testutil::make_clip(tool, tmp / "clips", "long.mp4", 60.0, 11);
    auto asset = testutil::probe_asset(tool, clip);

    SpyExtractor spy(std::make_shared<backends::SubprocessExtractor>());
    auto bundle = extract_bundle(asset, 30.0, spy, tmp / "bundle");

    CHECK(spy.last_batch == std::vector<double>{27, 28, 29, 30, 31, 32, 33});
    REQUIRE(spy.last_window.has_value());
    CHECK(spy.last_window->first == 25.0);   // t - 5
    CHECK(spy.last_window->second == 10.0);  // 10 s window

    CHECK(std::filesystem::exists(bundle.target_frame));
    for (const auto& f : bundle.preceding) CHECK(std::filesystem::exists(f));
    for (const auto& f : bundle.following) CHECK(std::filesystem::exists(f));
    CHECK(bundle.chronological_frames().size() == 7);
    CHECK(bundle.chronological_frames().front() == bundle.preceding[2]);  // t-3 first
    CHECK(bundle.chronological_frames()[3] == bundle.target_frame);

    auto audio_info = tool.probe(bundle.audio);
    CHECK(audio_info.duration_s == doctest::Approx(10.0).epsilon(0.02));

    std::ifstream meta(bundle.meta);
    json meta_json;
    meta >> meta_json;
    CHECK(meta_json["target_timestamp_s"] == 30.0);
    CHECK(meta_json["duration_s"].get<double>() > 59.0);
}

TEST_CASE("bundle extraction rejects clipped windows") {
    testutil::TempDir tmp;
    backends::SubprocessExtractor tool;
    auto clip = testutil::make_clip(tool, tmp / "clips", "short.mp4", 60.0, 12);
    auto asset = testutil::probe_asset(tool, clip);
    try {
        extract_bundle(asset, 3.0, tool, tmp / "bundle");
        FAIL("expected WindowClipped");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::WindowClipped);
    }
    CHECK_THROWS_AS(extract_bundle(asset, asset.duration_s - 2.0, tool, tmp / "b2"), Error);
}

namespace {

AssetBundle fixture_bundle(const testutil::TempDir& tmp, const std::string& tag,
                           const std::vector<std::string>& contents) {
    REQUIRE(contents.size() == 7);
    AssetBundle bundle;
    auto at = [&](int i) {
        return testutil::write_file(tmp.path() / tag / ("f" + std::to_string(i) + ".jpg"),
                                    contents[static_cast<size_t>(i)])
            .string();
    };
    bundle.preceding = {at(2), at(1), at(0)};
    bundle.target_frame = at(3);
    bundle.following = {at(4), at(5), at(6)};
    return bundle;
}

} // namespace

TEST_CASE("diversity gate rejects static sequences and accepts varied ones") {
    testutil::TempDir tmp;
    // 7 identical frames: every adjacent cosine is 1 > 0.8
    auto still = fixture_bundle(tmp, "still", std::vector<std::string>(7, "same"));
    backends::HashEmbedding hash_embed;
    CHECK(diversity_gate(still, hash_embed, "m") == GateDecision::Reject);

    // one adjacent pair at cosine 0.5 breaks the all-pairs condition
    backends::FixtureEmbedding fixed;
    auto varied = fixture_bundle(tmp, "varied",
                                 {"a0", "a1", "a2", "a3", "a4", "a5", "a6"});
    for (int i = 0; i < 7; ++i) {
        const std::string key = "f" + std::to_string(i) + ".jpg";
        if (i == 3) {
            fixed.set(key, {0, 1, 0, 0});  // cosine 0.0/0.5-ish break in the chain
        } else {
            fixed.set(key, {1, 0, 0, 0});
        }
    }
    CHECK(diversity_gate(varied, fixed, "m") == GateDecision::Accept);
}

TEST_CASE("diversity gate boundary: similarity exactly 0.8 accepts") {
    testutil::TempDir tmp;
    auto bundle = fixture_bundle(tmp, "edge", {"e0", "e1", "e2", "e3", "e4", "e5", "e6"});
    backends::FixtureEmbedding fixed;
    // alternating vectors with bit-exact cosine 0.8 (dot 80, norms 10*10)
    for (int i = 0; i < 7; ++i) {
        const std::string key = "f" + std::to_string(i) + ".jpg";
        if (i % 2 == 0) {
            fixed.set(key, {6, 8, 0, 0});
        } else {
            fixed.set(key, {0, 10, 0, 0});
        }
    }
    CHECK(diversity_gate(bundle, fixed, "m") == GateDecision::Accept);  // strict >

    // nudge above the threshold: cosine exactly 0.9 everywhere -> Reject
    backends::FixtureEmbedding tighter;
    for (int i = 0; i < 7; ++i) {
        const std::string key = "f" + std::to_string(i) + ".jpg";
        if (i % 2 == 0) {
            tighter.set(key, {6, 8, 0, 0});
        } else {
            tighter.set(key, {3, 9, 1, 3});  // dot 90, norm 10
        }
    }
    CHECK(diversity_gate(bundle, tighter, "m") == GateDecision::Reject);
}

TEST_CASE("all-pairs mode compares beyond adjacency") {
    testutil::TempDir tmp;
    auto bundle = fixture_bundle(tmp, "drift", {"d0", "d1", "d2", "d3", "d4", "d5", "d6"});
    backends::FixtureEmbedding fixed;
    // slow rotation: adjacent cosine ~0.94 (> 0.8) but distant pairs fall off
    for (int i = 0; i < 7; ++i) {
        const double theta = i * 0.349066;  // 20 degrees
        fixed.set("f" + std::to_string(i) + ".jpg",
                  {static_cast<float>(std::cos(theta)), static_cast<float>(std::sin(theta))});
    }
    CHECK(diversity_gate(bundle, fixed, "m") == GateDecision::Reject);  // 6 adjacent pairs
    DiversityOptions all_pairs;
    all_pairs.all_pairs = true;
    CHECK(diversity_gate(bundle, fixed, "m", all_pairs) == GateDecision::Accept);
}

TEST_CASE("diversity gate is invariant to frame file renaming") {
    testutil::TempDir tmp;
    backends::HashEmbedding embed;
    std::vector<std::string> contents{"c0", "c1", "c2", "c3", "c4", "c5", "c6"};
    auto original = fixture_bundle(tmp, "orig", contents);
    auto renamed = AssetBundle{};
    auto rename_to = [&](const std::string& src, int i) {
        auto dst = tmp.path() / "renamed" / ("totally_different_" + std::to_string(i) + ".jpg");
        std::filesystem::create_directories(dst.parent_path());
        std::filesystem::copy_file(src, dst);
        return dst.string();
    };
    renamed.preceding = {rename_to(original.preceding[0], 0),
                         rename_to(original.preceding[1], 1),
                         rename_to(original.preceding[2], 2)};
    renamed.target_frame = rename_to(original.target_frame, 3);
    renamed.following = {rename_to(original.following[0], 4),
                         rename_to(original.following[1], 5),
                         rename_to(original.following[2], 6)};
    CHECK(diversity_gate(original, embed, "m") == diversity_gate(renamed, embed, "m"));
}

TEST_CASE("target timestamp draws stay inside the unclipped window") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const double d = 10.0 + static_cast<double>(rng() % 1000);
        const double t = draw_target_timestamp(d, rng);
        CHECK(t >= 5.0);
        CHECK(t <= d - 5.0);
    }
    std::mt19937_64 a(123), b(123);
    const double d = 42.0;
    CHECK(draw_target_timestamp(d, a) == draw_target_timestamp(d, b));  // seedable
    CHECK_THROWS_AS(draw_target_timestamp(8.0, a), Error);
}

namespace {

// Embedding that forces the first k bundles to be rejected (identical
// vectors) and later ones accepted (per-call distinct vectors).
class PhasedEmbedding : public backends::EmbeddingBackend {
public:
    explicit PhasedEmbedding(int reject_bundles) : reject_calls_(reject_bundles * 7) {}

    std::vector<float> embed(const backends::EmbeddingRequest&) override {
        const int call = calls_++;
        if (call < reject_calls_) return {1, 0, 0, 0};
        const double theta = 0.7 * call;
        return {static_cast<float>(std::cos(theta)), static_cast<float>(std::sin(theta)), 0, 0};
    }

private:
    int reject_calls_;
    std::atomic<int> calls_{0};
};

} // namespace

TEST_CASE("build_diverse_bundle resamples until the gate accepts") {
    testutil::TempDir tmp;
    backends::SubprocessExtractor tool;
    auto clip = testutil::make_clip(tool, tmp / "clips", "b.mp4", 20.0, 13);
    auto asset = testutil::probe_asset(tool, clip);

    PhasedEmbedding embed(2);  // reject the first two draws
    std::mt19937_64 rng(1);
    auto build = build_diverse_bundle(asset, tool, embed, "m", tmp / "out", rng, 5);
    CHECK(build.accepted);
    CHECK(build.attempts == 3);
}

TEST_CASE("validator accepts a conforming record") {
    auto sample = testutil::make_sample("v1", "Film");
    auto report = validate_record(json(sample));
    CHECK(report.passed());
    CHECK(!report.warned());
    CHECK(report.violations.empty());
}

TEST_CASE("validator fails a three-element context array") {
    auto sample = testutil::make_sample("v2", "Film");
    json j = sample;
    j["context_description_en"] = json::array({"a", "b", "c"});
    auto report = validate_record(j);
    CHECK(!report.passed());
}

TEST_CASE("validator length bands for the chinese description") {
    auto record_with = [&](size_t n) {
        auto sample = testutil::make_sample("v3", "Film");
        json j = sample;
        j["segment_description_ch"] = testutil::cjk_text(n);
        return j;
    };
    CHECK(validate_record(record_with(250)).passed());
    CHECK(!validate_record(record_with(250)).warned());

    auto warned = validate_record(record_with(233));
    CHECK(warned.passed());  // warn-band entries still pass
    CHECK(warned.warned());

    CHECK(validate_record(record_with(261)).warned());
    CHECK(validate_record(record_with(270)).warned());
    CHECK(!validate_record(record_with(229)).passed());
    CHECK(!validate_record(record_with(271)).passed());
    CHECK(validate_record(record_with(240)).passed());
    CHECK(validate_record(record_with(260)).passed());
}

TEST_CASE("validator catches schema violations") {
    auto base = testutil::make_sample("v4", "Film");

    json missing = base;
    missing.erase("audio_description_en");
    CHECK(!validate_record(missing).passed());

    json bad_res = base;
    bad_res["resolution"] = "480P";
    CHECK(!validate_record(bad_res).passed());

    json bad_cat = base;
    bad_cat["category"] = "Cooking";
    CHECK(!validate_record(bad_cat).passed());

    json fenced = base;
    fenced["segment_description_en"] = "```json\n{}\n```";
    CHECK(!validate_record(fenced).passed());

    CHECK(!validate_record(json("just a string")).passed());
}

#pragma once
// Domain types shared by every pipeline stage. Pure values, no I/O.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shotscout::model {

// One retrieval task = shot description, optionally narrowed by exactly one
// additional factor. Shot means "description only".
enum class ConstraintKind { Shot, Temporal, Color, Style, Audio, Resolution };

const char* to_string(ConstraintKind kind);
ConstraintKind constraint_kind_from_string(std::string_view s);
const std::array<ConstraintKind, 6>& all_constraint_kinds();

// The 20-topic vocabulary used for category fields and quota planning.
const std::vector<std::string>& topic_vocabulary();
bool is_known_topic(std::string_view topic);

struct ShotQuery {
    std::string description;
    ConstraintKind constraint_kind = ConstraintKind::Shot;
    std::optional<std::string> constraint_text;  // present iff kind != Shot
    std::string language = "en";                 // "en" | "ch"

    // Description plus constraint text, as fed to prompts.
    std::string full_text() const;

    bool operator==(const ShotQuery&) const = default;
};

struct AssetPaths {
    std::string target_frame;
    std::array<std::string, 3> preceding_frames{};
    std::array<std::string, 3> following_frames{};
    std::string audio_clip;
    std::string metadata;

    bool operator==(const AssetPaths&) const = default;
};

// One benchmark record in the on-disk schema (snake_case field names are the
// wire format and must not change).
struct BenchmarkSample {
    std::string id;
    std::string video_link;
    std::string video_source;
    std::string category;    // one of topic_vocabulary()
    std::string timestamp;   // wall-clock text of the target moment
    std::string resolution;  // "1080P" | "720P"
    std::string segment_description_ch;
    std::string segment_description_en;
    std::array<std::string, 2> context_description_ch{};  // [before, after]
    std::array<std::string, 2> context_description_en{};
    std::string color_description_ch;
    std::string color_description_en;
    std::string style_description_ch;
    std::string style_description_en;
    std::string audio_description_ch;
    std::string audio_description_en;
    AssetPaths asset_paths;

    bool operator==(const BenchmarkSample&) const = default;
};

struct VideoAsset {
    std::string url;         // canonical form; may be empty for local files
    std::string local_path;
    double duration_s = 0.0;
    int width = 0;
    int height = 0;
    bool probe_ok = false;

    bool operator==(const VideoAsset&) const = default;
};

struct FrameRef {
    int index = 0;
    double timestamp_s = 0.0;
    std::string path;

    bool operator==(const FrameRef&) const = default;
};

// N uniformly sampled frames; frame i sits at the midpoint of bin i:
// t_i = (i + 0.5) / N * duration.
struct FrameGrid {
    VideoAsset video;
    int num_frames = 0;
    std::vector<FrameRef> frames;
    std::optional<std::string> audio_path;

    bool operator==(const FrameGrid&) const = default;
};

// Throws Error(InvalidArgument) when the grid violates the timestamp law
// (1e-9 relative) or ordering/bounds invariants.
void check_grid(const FrameGrid& grid);

struct LocalizationOutcome {
    VideoAsset candidate;
    std::optional<int> frame_index;             // nullopt == no match
    std::optional<double> chosen_timestamp_s;   // set iff frame_index is
    std::string chosen_frame_path;              // image handed to the judge
    std::string raw_model_output;
    std::string note;  // fallbacks / terminal errors, empty when clean

    bool operator==(const LocalizationOutcome&) const = default;
};

struct Verdict {
    bool matched = false;
    std::string judge_model;
    std::string rationale;

    bool operator==(const Verdict&) const = default;
};

struct FinalResult {
    bool success = false;
    std::optional<std::string> winning_url;
    std::optional<int> winning_frame;
    std::optional<double> winning_timestamp_s;

    bool operator==(const FinalResult&) const = default;
};

// Full per-sample trace; the unit of replay comparison and scoring.
struct RunRecord {
    std::string sample_id;
    std::string task;  // serialized ConstraintKind
    std::vector<std::string> queries;
    std::vector<VideoAsset> candidates;
    std::vector<std::pair<std::string, std::string>> dropped;  // (url, reason)
    std::vector<LocalizationOutcome> outcomes;
    std::vector<Verdict> verdicts;
    FinalResult final;
    std::string config_fingerprint;
    std::map<std::string, double> stage_timings_ms;  // excluded from determinism checks
    std::string error;  // sample-level failure reason, empty when none

    bool operator==(const RunRecord&) const = default;
};

// Throws Error(InvalidArgument) on |verdicts| <= |outcomes| <= |candidates|
// or final-result consistency violations.
void check_run_record(const RunRecord& record);

// Builds the retrieval request for one (sample, task, language) triple.
// Temporal joins the context pair as "Before: {...} After: {...}"; Resolution
// yields "({resolution})"; Shot carries no constraint text.
// Throws Error(MissingField) when the needed field is empty.
ShotQuery query_from_sample(const BenchmarkSample& sample, ConstraintKind kind,
                            const std::string& language);

} // namespace shotscout::model

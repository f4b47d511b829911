#pragma once
// Duration-adaptive uniform frame sampling. Frame i of an N-frame grid sits
// at the bin midpoint t_i = (i + 0.5) / N * duration.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shotscout/backends/interfaces.hpp"
#include "shotscout/model/types.hpp"

namespace shotscout::sampler {

struct Tier {
    std::optional<double> upper_bound_s;  // nullopt == unbounded (last tier)
    int frames = 0;

    bool operator==(const Tier&) const = default;
};

struct SamplingPolicy {
    std::vector<Tier> tiers;
    std::optional<int> flat;  // overrides tiers when set

    // 64 frames under 3 min, 128 for 3-10 min, 192 above 10 min.
    static SamplingPolicy closed_source_default();
    // Flat 64 frames regardless of duration.
    static SamplingPolicy open_source_default();
    static SamplingPolicy flat_n(int n);

    // "X-Y-Z" notation with the default 180/600 tier bounds; "flat-N" for a
    // flat policy.
    static SamplingPolicy from_notation(const std::string& notation);
    std::string notation() const;

    // Throws Error(InvalidArgument) unless bounds are strictly increasing,
    // frame counts positive, and the last tier unbounded.
    void check() const;

    bool operator==(const SamplingPolicy&) const = default;
};

void to_json(nlohmann::json& j, const SamplingPolicy& p);
void from_json(const nlohmann::json& j, SamplingPolicy& p);

// Tier boundaries are half-open: a duration equal to a bound falls into the
// next tier. Flat policies ignore duration.
int frames_for_duration(const SamplingPolicy& policy, double duration_s);

// Exactly (i + 0.5) / n * duration. Throws Error(IndexOutOfRange) unless
// 0 <= i < n; throws Error(InvalidArgument) for non-positive duration.
double timestamp_of(int i, int n, double duration_s);

// Cache key for a video: canonical-URL hash when present, content hash for
// purely local files.
std::string video_cache_key(const model::VideoAsset& video);

// Samples N = frames_for_duration(policy, D) frames (one subprocess batch)
// plus, when requested, the full audio track. Assets land in
// <cache_dir>/videos/<key>/frames_<N>/frame_%04d.jpg (+ grid.json) and
// <cache_dir>/videos/<key>/audio_full.mp3; a warm cache is returned without
// touching the extractor. A grid with missing frames raises
// Error(PartialGrid), never a silent success.
model::FrameGrid sample(const model::VideoAsset& video, const SamplingPolicy& policy,
                        bool with_audio, backends::MediaExtractor& extractor,
                        const std::filesystem::path& cache_dir);

// Same, but with an explicit frame count (context-overflow fallback path).
model::FrameGrid sample_with_count(const model::VideoAsset& video, int num_frames,
                                   bool with_audio, backends::MediaExtractor& extractor,
                                   const std::filesystem::path& cache_dir);

} // namespace shotscout::sampler

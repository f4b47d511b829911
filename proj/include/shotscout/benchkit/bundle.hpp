#pragma once
// 10-second multimodal asset bundles around a target moment: the target
// frame, three preceding and three following frames at 1 s intervals, the
// window's audio as MP3, and a metadata JSON.

#include <array>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "shotscout/backends/interfaces.hpp"
#include "shotscout/model/types.hpp"

namespace shotscout::benchkit {

struct AssetBundle {
    std::string target_frame;
    std::array<std::string, 3> preceding{};  // at t-1, t-2, t-3
    std::array<std::string, 3> following{};  // at t+1, t+2, t+3
    std::string audio;                       // MP3 over [t-5, t+5]
    std::string meta;                        // metadata JSON path
    double target_timestamp_s = 0.0;

    // The 7 frames in chronological order (t-3 ... t+3), as the diversity
    // gate consumes them.
    std::vector<std::string> chronological_frames() const;
};

// Extracts the bundle for target time t. Requires 5 <= t <= D-5; a window
// that would clip raises Error(WindowClipped).
AssetBundle extract_bundle(const model::VideoAsset& video, double t,
                           backends::MediaExtractor& extractor,
                           const std::filesystem::path& out_dir);

enum class GateDecision { Accept, Reject };

struct DiversityOptions {
    double threshold = 0.8;
    bool all_pairs = false;  // all 21 unordered pairs instead of the 6 adjacent
};

// Rejects the bundle iff every compared pair's cosine similarity strictly
// exceeds the threshold (equal-to-threshold accepts).
GateDecision diversity_gate(const AssetBundle& bundle, backends::EmbeddingBackend& embed,
                            const std::string& embed_model,
                            const DiversityOptions& options = {});

// Uniform draw over [5, D-5]; seedable for reproducibility.
double draw_target_timestamp(double duration_s, std::mt19937_64& rng);

struct BundleBuild {
    AssetBundle bundle;
    int attempts = 0;
    bool accepted = false;
};

// Resampling loop around extract_bundle + diversity_gate: draws fresh target
// timestamps until a bundle passes the gate or max_attempts is exhausted.
BundleBuild build_diverse_bundle(const model::VideoAsset& video,
                                 backends::MediaExtractor& extractor,
                                 backends::EmbeddingBackend& embed,
                                 const std::string& embed_model,
                                 const std::filesystem::path& out_dir, std::mt19937_64& rng,
                                 int max_attempts = 10, const DiversityOptions& options = {});

} // namespace shotscout::benchkit

#pragma once
// Dual-model consensus filtering for color/style and single-model audio
// classification, with the fixed filtering prompts.

#include <optional>
#include <string>

#include "shotscout/backends/interfaces.hpp"

namespace shotscout::benchkit {

enum class FilterKind { Color, Style };

// Category labels as retained in the dataset.
// Color: "Warm Tone" | "Cold Tone" | "Neutral Tone"
// Style: "Real" | "2D Animation" | "3D Animation" | "Graphic"
// Audio: "Human Voice" | "Background Music" | "Ambient Sound"

extern const char* const kColorFilterSystemV1;
extern const char* const kColorFilterTaskV1;
extern const char* const kStyleFilterSystemV1;
extern const char* const kStyleFilterTaskV1;
extern const char* const kAudioFilterSystemV1;
extern const char* const kAudioFilterTaskV1;

// Maps a raw model answer onto a category label; nullopt == unknown/ambiguous.
std::optional<std::string> normalize_filter_answer(FilterKind kind, const std::string& answer);
std::optional<std::string> normalize_audio_answer(const std::string& answer);

struct ConsensusOptions {
    int max_retries = 3;  // total rounds = 1 + max_retries, 2 model calls each
};

struct ConsensusResult {
    std::optional<std::string> label;  // nullopt == Rejected
    int rounds = 0;

    bool rejected() const { return !label.has_value(); }
};

// Queries both models with the filtering prompt for `kind`; agreement on a
// known category yields that label, disagreement or unknown answers retry up
// to max_retries times, then Rejected. Rejected is a normal outcome.
ConsensusResult consensus_classify(const std::string& frame_path, FilterKind kind,
                                   backends::ChatBackend& model_a, const std::string& model_a_id,
                                   backends::ChatBackend& model_b, const std::string& model_b_id,
                                   const ConsensusOptions& options = {});

// Single-model audio classification; a non-matching answer means Rejected.
std::optional<std::string> classify_audio(const std::string& clip_path,
                                          backends::ChatBackend& chat,
                                          const std::string& model_id);

} // namespace shotscout::benchkit

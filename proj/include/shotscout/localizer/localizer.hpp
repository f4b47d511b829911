#pragma once
// Stage 3b: frame grounding over a sampled grid. Builds the grounding prompt,
// queries the chat backend and parses a strict frame choice.

#include <filesystem>
#include <optional>
#include <string>

#include "shotscout/backends/interfaces.hpp"
#include "shotscout/model/types.hpp"
#include "shotscout/sampler/sampler.hpp"

namespace shotscout::localizer {

enum class ParseMode { Strict, Permissive };

const char* to_string(ParseMode mode);
ParseMode parse_mode_from_string(const std::string& s);

// Versioned prompt template with the placeholders $VIDEO_DURATION$,
// $NUM_FRAMES$ and $en_memory_data$.
extern const char* const kGroundingTemplateV1;

// Substitutes duration, frame count and the full query text, then attaches
// the frames in chronological order plus the audio track when the grid
// carries one. Temperature 0.
backends::ChatRequest build_grounding_prompt(const model::ShotQuery& query,
                                             const model::FrameGrid& grid,
                                             const std::string& chat_model);

// Frame choice: an index in [0, N-1] or no-match (Permissive only).
// Strict mode rejects "N/A"/null/multiple values with Error(ForbiddenNA /
// NotInteger); out-of-range indices raise Error(OutOfRange); a missing
// <tool_call> block raises Error(NoToolCall).
std::optional<int> parse_frame_choice(const std::string& raw, int n, ParseMode mode);

struct LocalizeOptions {
    ParseMode mode = ParseMode::Strict;
    int format_reasks = 2;      // R
    int overflow_halvings = 2;  // context-overflow fallback: halve N, resample
};

// sample -> prompt -> one chat call (plus bounded re-asks) -> parsed choice.
// On ContextOverflow the frame count is halved (floor) and the candidate is
// resampled, at most `overflow_halvings` times, annotated in the outcome.
// A terminally failing chat yields a NoMatch outcome with the error noted
// rather than throwing, so the pipeline can move to the next candidate.
model::LocalizationOutcome localize(const model::ShotQuery& query,
                                    const model::VideoAsset& candidate,
                                    const sampler::SamplingPolicy& policy, bool with_audio,
                                    backends::ChatBackend& chat,
                                    backends::MediaExtractor& extractor,
                                    const std::string& chat_model,
                                    const std::filesystem::path& cache_dir,
                                    const LocalizeOptions& options = {});

} // namespace shotscout::localizer

#include "shotscout/localizer/localizer.hpp"

#include <cmath>

#include <json.hpp>

#include "shotscout/common/strings.hpp"
#include "shotscout/errors.hpp"

namespace shotscout::localizer {

using nlohmann::json;

const char* to_string(ParseMode mode) {
    return mode == ParseMode::Strict ? "strict" : "permissive";
}

ParseMode parse_mode_from_string(const std::string& s) {
    if (s == "strict") return ParseMode::Strict;
    if (s == "permissive") return ParseMode::Permissive;
    throw Error(ErrorKind::InvalidArgument, "unknown parse mode: " + s);
}

const char* const kGroundingTemplateV1 = R"(Role: You are a Visual Frame Grounding Specialist. Your task is to identify the single most relevant frame that best matches the user's description.

Context:
The input consists of multiple images extracted from a video.
The images are provided in strict chronological order, from the beginning to the end of the video.
The first image has frame_id = 0, the second image has frame_id = 1, and so on.
In addition to images, you are also given the full audio track of the video.
The audio is not segmented per frame and should be used as global temporal and semantic context, not as a direct frame-to-audio alignment.

Temporal Information:
The video duration is $VIDEO_DURATION$ seconds.
A total of $NUM_FRAMES$ frames are sampled uniformly from the video.
Frame i corresponds approximately to time t_i = (i + 0.5) / $NUM_FRAMES$ x $VIDEO_DURATION$ seconds.

Target Description (The event to find): "$en_memory_data$"

Instructions:

1. Joint Reasoning with Vision and Audio:
Use the text description, visual content of all frames, and the audio track together.
Use audio cues (e.g., speech, sound events, changes in intensity) to infer when the described event occurs.
Use visual evidence from frames to determine which frame best represents that moment.

2. Scan All Frames: Carefully analyze all provided images in chronological order.

3. Select the Best Match: Identify the single frame whose visual content is most relevant to the target description.
If multiple frames partially match, choose the closest in time to the inferred audio event.
If the match is weak or ambiguous, select the most semantically related frame.

4. Mandatory Selection Rule:
You must return exactly one valid frame_id.
The frame_id must be an integer between 0 and $NUM_FRAMES$ - 1.
Do not return "N/A", null, or multiple values.

Output Format (JSON Only):
<tool_call>{"frame_id": <integer>}</tool_call>
)";

backends::ChatRequest build_grounding_prompt(const model::ShotQuery& query,
                                             const model::FrameGrid& grid,
                                             const std::string& chat_model) {
    if (grid.num_frames <= 0 || grid.frames.empty()) {
        throw Error(ErrorKind::InvalidArgument, "cannot ground an empty grid");
    }
    std::string text = kGroundingTemplateV1;
    text = replace_all(text, "$VIDEO_DURATION$", format_seconds(grid.video.duration_s));
    text = replace_all(text, "$NUM_FRAMES$", std::to_string(grid.num_frames));
    text = replace_all(text, "$en_memory_data$", query.full_text());

    backends::ChatRequest req;
    req.model = chat_model;
    req.temperature = 0.0;
    req.user_parts.push_back(backends::Part::text(std::move(text)));
    for (const auto& frame : grid.frames) {
        req.user_parts.push_back(backends::Part::image(frame.path));
    }
    if (grid.audio_path) {
        req.user_parts.push_back(backends::Part::audio(*grid.audio_path));
    }
    return req;
}

namespace {

std::optional<std::string> tool_call_content(const std::string& raw) {
    const std::string open = "<tool_call>";
    const std::string close = "</tool_call>";
    size_t begin = raw.find(open);
    if (begin == std::string::npos) return std::nullopt;
    begin += open.size();
    size_t end = raw.find(close, begin);
    if (end == std::string::npos) return std::nullopt;
    return raw.substr(begin, end - begin);
}

bool contains_na_token(const std::string& text) {
    size_t pos = text.find("N/A");
    while (pos != std::string::npos) {
        const bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(text[pos - 1]));
        const size_t after = pos + 3;
        const bool right_ok =
            after >= text.size() || !std::isalnum(static_cast<unsigned char>(text[after]));
        if (left_ok && right_ok) return true;
        pos = text.find("N/A", pos + 1);
    }
    return false;
}

} // namespace

std::optional<int> parse_frame_choice(const std::string& raw, int n, ParseMode mode) {
    const bool has_na = contains_na_token(raw);
    auto call = tool_call_content(raw);

    if (!call) {
        if (has_na) {
            if (mode == ParseMode::Permissive) return std::nullopt;
            throw Error(ErrorKind::ForbiddenNA, "model declined with N/A in strict mode");
        }
        throw Error(ErrorKind::NoToolCall, "no <tool_call> block in model output");
    }

    json payload;
    try {
        payload = json::parse(*call);
    } catch (const json::exception& e) {
        if (has_na) {
            if (mode == ParseMode::Permissive) return std::nullopt;
            throw Error(ErrorKind::ForbiddenNA, "model declined with N/A in strict mode");
        }
        throw Error(ErrorKind::MalformedJson, e.what());
    }
    if (!payload.is_object() || !payload.contains("frame_id")) {
        throw Error(ErrorKind::MalformedJson, "tool call lacks frame_id");
    }
    const json& id = payload.at("frame_id");

    if (id.is_null() || (id.is_string() && contains_na_token(id.get<std::string>()))) {
        if (mode == ParseMode::Permissive) return std::nullopt;
        throw Error(ErrorKind::ForbiddenNA, "frame_id is N/A/null in strict mode");
    }
    if (id.is_array()) {
        throw Error(ErrorKind::NotInteger, "frame_id holds multiple values");
    }
    if (id.is_number_float()) {
        double value = id.get<double>();
        if (value != std::floor(value)) {
            throw Error(ErrorKind::NotInteger, "frame_id is not an integer");
        }
    } else if (!id.is_number_integer()) {
        throw Error(ErrorKind::NotInteger, "frame_id is not an integer");
    }
    const long long value = id.is_number_float()
                                ? static_cast<long long>(id.get<double>())
                                : id.get<long long>();
    if (value < 0 || value >= n) {
        throw Error(ErrorKind::OutOfRange, "frame_id " + std::to_string(value) +
                                               " outside [0, " + std::to_string(n - 1) + "]");
    }
    return static_cast<int>(value);
}

namespace {

// One chat round with bounded format re-asks; returns the raw text of the
// winning round and the parsed choice.
std::pair<std::string, std::optional<int>> grounded_choice(
    const backends::ChatRequest& base, int n, backends::ChatBackend& chat,
    const LocalizeOptions& options) {
    for (int attempt = 0;; ++attempt) {
        backends::ChatRequest req = base;
        if (attempt > 0) {
            auto& first = req.user_parts.front();
            first.value += "\n\nFormat reminder (attempt " + std::to_string(attempt + 1) +
                           "): answer with exactly one <tool_call>{\"frame_id\": "
                           "<integer>}</tool_call>.";
        }
        const std::string raw = chat.chat(req);
        try {
            return {raw, parse_frame_choice(raw, n, options.mode)};
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ContextOverflow) throw;
            if (attempt >= options.format_reasks) throw;
        }
    }
}

} // namespace

model::LocalizationOutcome localize(const model::ShotQuery& query,
                                    const model::VideoAsset& candidate,
                                    const sampler::SamplingPolicy& policy, bool with_audio,
                                    backends::ChatBackend& chat,
                                    backends::MediaExtractor& extractor,
                                    const std::string& chat_model,
                                    const std::filesystem::path& cache_dir,
                                    const LocalizeOptions& options) {
    model::LocalizationOutcome outcome;
    outcome.candidate = candidate;

    int frames = sampler::frames_for_duration(policy, candidate.duration_s);
    std::string note;
    for (int halving = 0;; ++halving) {
        try {
            model::FrameGrid grid =
                sampler::sample_with_count(candidate, frames, with_audio, extractor, cache_dir);
            backends::ChatRequest req = build_grounding_prompt(query, grid, chat_model);
            auto [raw, choice] = grounded_choice(req, grid.num_frames, chat, options);
            outcome.raw_model_output = raw;
            outcome.note = note;
            if (choice) {
                outcome.frame_index = *choice;
                outcome.chosen_timestamp_s =
                    sampler::timestamp_of(*choice, grid.num_frames, candidate.duration_s);
                outcome.chosen_frame_path = grid.frames[static_cast<size_t>(*choice)].path;
            }
            return outcome;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ContextOverflow && halving < options.overflow_halvings &&
                frames > 1) {
                frames = frames / 2;
                if (!note.empty()) note += "; ";
                note += "context overflow, resampled at " + std::to_string(frames) + " frames";
                continue;
            }
            // terminal: candidate yields no match, pipeline moves on
            outcome.frame_index.reset();
            outcome.chosen_timestamp_s.reset();
            if (!note.empty()) note += "; ";
            outcome.note = note + "localization failed: " + e.what();
            return outcome;
        }
    }
}

} // namespace shotscout::localizer

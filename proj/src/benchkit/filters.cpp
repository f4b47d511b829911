#include "shotscout/benchkit/filters.hpp"

#include "shotscout/common/strings.hpp"

namespace shotscout::benchkit {

const char* const kColorFilterSystemV1 =
    "You are a visual analysis expert specializing in color tone classification.";

const char* const kColorFilterTaskV1 =
    R"(Task: Analyze the provided image and classify its overall color tone into one of three categories.

Categories:
Warm Tone: The image is dominated by warm colors such as orange, yellow, or red.
Cold Tone: The image is dominated by cold colors such as blue, cyan, or purple.
Neutral Tone: The image has balanced white balance with no obvious color bias.

Output: Return only one word indicating the classification result.)";

const char* const kStyleFilterSystemV1 =
    "You are a visual analysis expert specializing in visual style classification.";

const char* const kStyleFilterTaskV1 =
    R"(Task: Analyze the provided image and classify its visual style into one of four categories.

Categories:
Real: Live-action or cinematic footage, content based on reality.
2D Animation: Flat animation including anime, cartoons, or hand-drawn content.
3D Animation: 3D animation, game graphics, or rendered scenes.
Graphic: Pure graphics such as charts, text, or software interfaces.

Output: Return only one option indicating the classification result.)";

const char* const kAudioFilterSystemV1 =
    "You are an expert in audio description classification.";

const char* const kAudioFilterTaskV1 =
    R"(Task: Analyze the provided audio clip and classify its overall audio description into one of the three categories.

Categories:
Human Voice: The audio clip primarily contains human speech or dialogue.
Background Music: The audio clip primarily contains music or background tracks, with no significant human voice.
Ambient Sound: The audio clip primarily contains natural or environmental sounds, such as wind, water, animal sounds, etc.

Output: Return only one word indicating the classification result.)";

std::optional<std::string> normalize_filter_answer(FilterKind kind, const std::string& answer) {
    const std::string a = to_lower(trim(answer));
    if (a.empty()) return std::nullopt;
    if (kind == FilterKind::Color) {
        if (a.find("warm") != std::string::npos) return "Warm Tone";
        if (a.find("cold") != std::string::npos || a.find("cool") != std::string::npos)
            return "Cold Tone";
        if (a.find("neutral") != std::string::npos) return "Neutral Tone";
        return std::nullopt;
    }
    if (a.find("2d") != std::string::npos) return "2D Animation";
    if (a.find("3d") != std::string::npos) return "3D Animation";
    if (a.find("graphic") != std::string::npos) return "Graphic";
    if (a.find("real") != std::string::npos || a.find("live") != std::string::npos)
        return "Real";
    return std::nullopt;
}

std::optional<std::string> normalize_audio_answer(const std::string& answer) {
    const std::string a = to_lower(trim(answer));
    if (a.find("human") != std::string::npos || a.find("voice") != std::string::npos ||
        a.find("speech") != std::string::npos) {
        return "Human Voice";
    }
    if (a.find("music") != std::string::npos) return "Background Music";
    if (a.find("ambient") != std::string::npos || a.find("environment") != std::string::npos) {
        return "Ambient Sound";
    }
    return std::nullopt;
}

namespace {

backends::ChatRequest filter_request(const std::string& frame_path, FilterKind kind,
                                     const std::string& model_id) {
    backends::ChatRequest req;
    req.model = model_id;
    req.temperature = 0.0;
    req.system = kind == FilterKind::Color ? kColorFilterSystemV1 : kStyleFilterSystemV1;
    req.user_parts.push_back(backends::Part::text(
        kind == FilterKind::Color ? kColorFilterTaskV1 : kStyleFilterTaskV1));
    req.user_parts.push_back(backends::Part::image(frame_path));
    return req;
}

} // namespace

ConsensusResult consensus_classify(const std::string& frame_path, FilterKind kind,
                                   backends::ChatBackend& model_a, const std::string& model_a_id,
                                   backends::ChatBackend& model_b, const std::string& model_b_id,
                                   const ConsensusOptions& options) {
    ConsensusResult result;
    const int max_rounds = 1 + options.max_retries;
    for (int round = 1; round <= max_rounds; ++round) {
        result.rounds = round;
        auto a = normalize_filter_answer(kind, model_a.chat(filter_request(frame_path, kind,
                                                                           model_a_id)));
        auto b = normalize_filter_answer(kind, model_b.chat(filter_request(frame_path, kind,
                                                                           model_b_id)));
        if (a && b && *a == *b) {
            result.label = *a;
            return result;
        }
    }
    return result;  // Rejected
}

std::optional<std::string> classify_audio(const std::string& clip_path,
                                          backends::ChatBackend& chat,
                                          const std::string& model_id) {
    backends::ChatRequest req;
    req.model = model_id;
    req.temperature = 0.0;
    req.system = kAudioFilterSystemV1;
    req.user_parts.push_back(backends::Part::text(kAudioFilterTaskV1));
    req.user_parts.push_back(backends::Part::audio(clip_path));
    return normalize_audio_answer(chat.chat(req));
}

} // namespace shotscout::benchkit

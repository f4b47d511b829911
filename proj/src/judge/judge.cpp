#include "shotscout/judge/judge.hpp"

#include "shotscout/common/strings.hpp"
#include "shotscout/common/vecmath.hpp"
#include "shotscout/errors.hpp"

namespace shotscout::judge {

const char* const kJudgeTemplateV1 =
    R"(You are a strict visual verification judge for a video shot retrieval system.

You are given a target shot description and two images. Image 1 is the ground-truth reference frame. Image 2 is the frame selected by the retrieval system.

Decide whether Image 2 shows a shot that matches the target description in both semantics and every stated constraint (such as temporal context, color tone, visual style, audio hints, or resolution), and depicts the same moment as the reference frame.

Target description: "{DESCRIPTION}"

Answer with a single token first: TRUE if the selected frame matches, FALSE otherwise. You may add one short sentence of rationale on the next line.
)";

std::pair<bool, std::string> parse_judge_reply(const std::string& raw) {
    const std::string text = trim(raw);
    size_t end = 0;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string token = to_lower(text.substr(0, end));
    // tolerate trailing punctuation on the token
    while (!token.empty() && (token.back() == '.' || token.back() == ',' || token.back() == ':' ||
                              token.back() == '!')) {
        token.pop_back();
    }
    std::string rest = trim(text.substr(end));
    if (token == "true") return {true, rest};
    if (token == "false") return {false, rest};
    throw Error(ErrorKind::UnparseableVerdict, "expected leading TRUE/FALSE, got: " +
                                                   text.substr(0, 80));
}

model::Verdict verify(const model::ShotQuery& query, const std::string& gt_frame,
                      const std::string& selected_frame, backends::ChatBackend& chat,
                      const std::string& judge_model, const VerifyOptions& options) {
    backends::ChatRequest base;
    base.model = judge_model;
    base.temperature = 0.0;
    base.user_parts.push_back(backends::Part::text(
        replace_all(kJudgeTemplateV1, "{DESCRIPTION}", query.full_text())));
    base.user_parts.push_back(backends::Part::image(gt_frame));
    base.user_parts.push_back(backends::Part::image(selected_frame));

    for (int attempt = 0;; ++attempt) {
        backends::ChatRequest req = base;
        if (attempt > 0) {
            req.user_parts.front().value +=
                "\n\nFormat reminder (attempt " + std::to_string(attempt + 1) +
                "): start your reply with the single token TRUE or FALSE.";
        }
        const std::string raw = chat.chat(req);
        try {
            auto [matched, rationale] = parse_judge_reply(raw);
            model::Verdict verdict;
            verdict.matched = matched;
            verdict.judge_model = judge_model;
            verdict.rationale = rationale;
            return verdict;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::UnparseableVerdict || attempt >= options.format_reasks) {
                throw;
            }
        }
    }
}

bool clip_verdict(const std::string& gt_frame, const std::string& selected_frame,
                  backends::EmbeddingBackend& embed, const std::string& embed_model,
                  double threshold) {
    if (threshold < -1.0 || threshold > 1.0) {
        throw Error(ErrorKind::InvalidArgument, "threshold must be in [-1, 1]");
    }
    std::vector<float> a =
        embed.embed(backends::EmbeddingRequest{backends::Part::image(gt_frame), embed_model});
    std::vector<float> b = embed.embed(
        backends::EmbeddingRequest{backends::Part::image(selected_frame), embed_model});
    return cosine_similarity(a, b) >= threshold;
}

bool clip_verdict_text(const std::string& description, const std::string& selected_frame,
                       backends::EmbeddingBackend& embed, const std::string& embed_model,
                       double threshold) {
    if (threshold < -1.0 || threshold > 1.0) {
        throw Error(ErrorKind::InvalidArgument, "threshold must be in [-1, 1]");
    }
    std::vector<float> a =
        embed.embed(backends::EmbeddingRequest{backends::Part::text(description), embed_model});
    std::vector<float> b = embed.embed(
        backends::EmbeddingRequest{backends::Part::image(selected_frame), embed_model});
    return cosine_similarity(a, b) >= threshold;
}

ConfusionMatrix confusion(const std::vector<bool>& preds, const std::vector<bool>& human) {
    if (preds.size() != human.size()) {
        throw Error(ErrorKind::LengthMismatch, std::to_string(preds.size()) + " predictions vs " +
                                                   std::to_string(human.size()) + " labels");
    }
    ConfusionMatrix m;
    for (size_t i = 0; i < preds.size(); ++i) {
        if (preds[i] && human[i]) ++m.tp;
        else if (preds[i] && !human[i]) ++m.fp;
        else if (!preds[i] && human[i]) ++m.fn;
        else ++m.tn;
    }
    return m;
}

} // namespace shotscout::judge

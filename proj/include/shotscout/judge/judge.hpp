#pragma once
// Verification and evaluation: LLM-judge match decision, the embedding
// similarity baseline, and judge-vs-human agreement tooling.

#include <string>
#include <vector>

#include "shotscout/backends/interfaces.hpp"
#include "shotscout/model/types.hpp"

namespace shotscout::judge {

struct ConfusionMatrix {
    long long tp = 0;
    long long fp = 0;
    long long fn = 0;
    long long tn = 0;

    long long total() const { return tp + fp + fn + tn; }

    bool operator==(const ConfusionMatrix&) const = default;
};

// Judge prompt: binary instruction, a single leading TRUE/FALSE token, then
// an optional rationale. Placeholder: {DESCRIPTION}.
extern const char* const kJudgeTemplateV1;

struct VerifyOptions {
    int format_reasks = 2;  // R
};

// Single chat call with the fixed judge prompt, description and both images;
// the answer is parsed to a strict yes/no token (re-asked at most R times,
// then Error(UnparseableVerdict)). Temperature 0.
model::Verdict verify(const model::ShotQuery& query, const std::string& gt_frame,
                      const std::string& selected_frame, backends::ChatBackend& chat,
                      const std::string& judge_model, const VerifyOptions& options = {});

// Parses a judge reply: leading token TRUE/FALSE (case-insensitive), rest is
// rationale. Throws Error(UnparseableVerdict).
std::pair<bool, std::string> parse_judge_reply(const std::string& raw);

// Embedding-similarity baseline: cosine(embed(gt), embed(selected)) >=
// threshold. Image-image by default; pass text payloads for the text-image
// variant.
bool clip_verdict(const std::string& gt_frame, const std::string& selected_frame,
                  backends::EmbeddingBackend& embed, const std::string& embed_model,
                  double threshold);

// Text-description vs selected-frame variant of the baseline.
bool clip_verdict_text(const std::string& description, const std::string& selected_frame,
                       backends::EmbeddingBackend& embed, const std::string& embed_model,
                       double threshold);

// Standard 2x2 counts, positive == matched. Throws Error(LengthMismatch).
ConfusionMatrix confusion(const std::vector<bool>& preds, const std::vector<bool>& human);

} // namespace shotscout::judge

#include "shotscout/generator/generator.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "shotscout/common/strings.hpp"
#include "shotscout/errors.hpp"

namespace shotscout::generator {

using nlohmann::json;

const char* const kImaginationTemplateV1 = R"(You are an autonomous "Video Hunter Agent". Your ultimate goal is to precisely locate the original video link based on the user's vague memory (including visual, auditory, and timeline clues). You must provide {M} keywords most likely to hit the target container.

Tool Available:
search_videos: Simultaneously performs search on YouTube.
Parameters: {"query": "search keywords"}
Note: This tool automatically handles the "youtube" suffix, so you only need to provide the core keywords.

Output Format:
<think>...your deep reasoning process...</think>
<tool_call>{"name": "search_videos", "arguments": {"query": ["your search term1","your search term2"]}}</tool_call>

Core Constraints & Strategy:

1. Reasoning First: Before taking any action, you must think inside <think>...</think>. You must not directly call tools or output answers without prior reasoning.

2. Keyword Generation Strategy (Abductive Reasoning): You must use "Abductive Reasoning" to bridge the gap between the user's "clip description" and the likely "full video title."

Deconstruction: Extract visual anchors (OCR, specific objects), actions, and atmosphere.

Divergent Hypotheses ("Container" Logic): You must propose different paths for what the full video actually is:

Hypothesis A (Literal): The video is explicitly about the action described (e.g., a "How-to" or generic vlog).

Hypothesis B (Metaphorical/B-roll): The clip is a visual metaphor for an abstract concept (e.g., "cutting bread with a spoon" -> Search keywords: "inefficiency", "wrong tools", "productivity").

Hypothesis C (Specific Source): The clip is from a specific movie, meme, game glitch, or news event (e.g., "bucket on shopkeeper head" -> Search keywords: "Skyrim bucket thief").

Selection: Select the most probable hypothesis to construct a single best English search phrase.

Information Source Isolation: Reference ONLY English corpus.

3. Search Strategy: You MUST perform search rounds using the best English keywords derived from your strongest hypothesis.

4. Execution Workflow: Analyze the description using Abductive Reasoning & construct the best English keyword -> call search_videos

Example:
User: "Split-screen dance video, Y2K fashion, leg warmers, electronic music"
Agent: <think>Y2K fashion + split-screen editing + dance = likely TikTok trend or K-pop cover. Keywords: style + format.</think><tool_call>{"name": "search_videos", "arguments": {"query": ["Y2K dance split screen leg warmers", "split screen clone dance phonk"]}}</tool_call>

User: "Please find the link to this video: {DESCRIPTION}{CONSTRAINT}"
)";

std::string build_imagination_prompt(const model::ShotQuery& query, int m) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "M must be >= 1");
    std::string prompt = replace_all(kImaginationTemplateV1, "{M}", std::to_string(m));
    prompt = replace_all(prompt, "{DESCRIPTION}", query.description);
    std::string constraint;
    if (query.constraint_text && !query.constraint_text->empty()) {
        constraint = " " + *query.constraint_text;
    }
    return replace_all(prompt, "{CONSTRAINT}", constraint);
}

namespace {

// Returns the text between the first <tag>...</tag> pair, if any.
std::optional<std::string> tag_content(const std::string& raw, const std::string& tag) {
    const std::string open = "<" + tag + ">";
    const std::string close = "</" + tag + ">";
    size_t begin = raw.find(open);
    if (begin == std::string::npos) return std::nullopt;
    begin += open.size();
    size_t end = raw.find(close, begin);
    if (end == std::string::npos) return std::nullopt;
    return raw.substr(begin, end - begin);
}

} // namespace

ExpansionResult parse_agent_output(const std::string& raw, int m) {
    ExpansionResult result;
    result.raw = raw;
    result.think = trim(tag_content(raw, "think").value_or(""));

    auto call = tag_content(raw, "tool_call");
    if (!call) throw Error(ErrorKind::NoToolCall, "no <tool_call> block in model output");

    json payload;
    try {
        payload = json::parse(*call);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedJson, e.what());
    }
    if (!payload.is_object() || !payload.contains("name")) {
        throw Error(ErrorKind::MalformedJson, "tool call lacks a name");
    }
    if (payload.at("name") != "search_videos") {
        throw Error(ErrorKind::WrongToolName, "expected search_videos, got " +
                                                  payload.at("name").dump());
    }
    if (!payload.contains("arguments") || !payload.at("arguments").is_object() ||
        !payload.at("arguments").contains("query") ||
        !payload.at("arguments").at("query").is_array()) {
        throw Error(ErrorKind::MalformedJson, "arguments.query must be an array");
    }
    const json& queries = payload.at("arguments").at("query");
    if (static_cast<int>(queries.size()) != m) {
        throw Error(ErrorKind::ArityMismatch, "expected " + std::to_string(m) +
                                                  " queries, got " +
                                                  std::to_string(queries.size()));
    }
    for (const auto& q : queries) {
        if (!q.is_string() || q.get<std::string>().empty()) {
            throw Error(ErrorKind::MalformedJson, "queries must be non-empty strings");
        }
        result.queries.push_back(q.get<std::string>());
    }
    return result;
}

std::string print_agent_output(const ExpansionResult& result) {
    json call{{"name", "search_videos"}, {"arguments", json{{"query", result.queries}}}};
    return "<think>" + result.think + "</think><tool_call>" + call.dump() + "</tool_call>";
}

namespace {

bool has_case_insensitive_duplicates(const std::vector<std::string>& queries) {
    std::set<std::string> seen;
    for (const auto& q : queries) {
        if (!seen.insert(to_lower(q)).second) return true;
    }
    return false;
}

} // namespace

ExpansionResult expand(const model::ShotQuery& query, int m, backends::ChatBackend& chat,
                       const std::string& chat_model, const ExpandOptions& options) {
    const std::string prompt = build_imagination_prompt(query, m);
    bool dup_reasked = false;

    for (int attempt = 0;; ++attempt) {
        backends::ChatRequest req;
        req.model = chat_model;
        req.temperature = 0.0;
        std::string text = prompt;
        if (attempt > 0) {
            text += "\n\nFormat reminder (attempt " + std::to_string(attempt + 1) +
                    "): reply with <think>...</think> followed by exactly one "
                    "<tool_call>{\"name\": \"search_videos\", \"arguments\": {\"query\": "
                    "[...]}}</tool_call> containing " +
                    std::to_string(m) + " distinct, non-empty queries.";
        }
        req.user_parts.push_back(backends::Part::text(text));

        const std::string raw = chat.chat(req);
        try {
            ExpansionResult result = parse_agent_output(raw, m);
            if (has_case_insensitive_duplicates(result.queries)) {
                if (dup_reasked || attempt >= options.format_reasks) {
                    throw Error(ErrorKind::DuplicateQueries,
                                "model repeated a query after re-ask");
                }
                dup_reasked = true;
                continue;
            }
            return result;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::DuplicateQueries) throw;
            if (attempt >= options.format_reasks) throw;
        }
    }
}

} // namespace shotscout::generator

#pragma once
// Stage 1: expand a shot query into M search queries through the
// video-imagination agent prompt, then parse the model's tool call.

#include <string>
#include <vector>

#include "shotscout/backends/interfaces.hpp"
#include "shotscout/model/types.hpp"

namespace shotscout::generator {

struct ExpansionResult {
    std::string think;
    std::vector<std::string> queries;  // exactly M, all non-empty
    std::string raw;

    bool operator==(const ExpansionResult&) const = default;
};

// Versioned prompt template. Placeholders: {M}, {DESCRIPTION}, {CONSTRAINT}.
extern const char* const kImaginationTemplateV1;

// Substitutes the query count and the user's memory into the template.
// Constraint text, when present, is appended verbatim after the description.
std::string build_imagination_prompt(const model::ShotQuery& query, int m);

// Extracts the <think> block (may be empty) and the search_videos tool call.
// Throws Error with kind NoToolCall, MalformedJson, WrongToolName or
// ArityMismatch.
ExpansionResult parse_agent_output(const std::string& raw, int m);

// Inverse of parse_agent_output for well-formed results; used by mocks.
std::string print_agent_output(const ExpansionResult& result);

struct ExpandOptions {
    int format_reasks = 2;  // R: bounded re-asks on parse failure
};

// One single-turn chat round plus at most R format re-asks. Queries are
// deduplicated case-insensitively; a duplicate set triggers one re-ask (within
// the same R budget) and raises Error(DuplicateQueries) if it persists.
ExpansionResult expand(const model::ShotQuery& query, int m, backends::ChatBackend& chat,
                       const std::string& chat_model, const ExpandOptions& options = {});

} // namespace shotscout::generator

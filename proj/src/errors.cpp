#include "shotscout/errors.hpp"

namespace shotscout {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Transport: return "transport_error";
        case ErrorKind::MissingFixture: return "missing_fixture";
        case ErrorKind::ModelRefusal: return "model_refusal";
        case ErrorKind::ContextOverflow: return "context_overflow";
        case ErrorKind::MediaToolFailure: return "media_tool_failure";
        case ErrorKind::Unreachable: return "unreachable";
        case ErrorKind::Truncated: return "truncated";
        case ErrorKind::NoToolCall: return "no_tool_call";
        case ErrorKind::MalformedJson: return "malformed_json";
        case ErrorKind::WrongToolName: return "wrong_tool_name";
        case ErrorKind::ArityMismatch: return "arity_mismatch";
        case ErrorKind::DuplicateQueries: return "duplicate_queries";
        case ErrorKind::OutOfRange: return "out_of_range";
        case ErrorKind::NotInteger: return "not_integer";
        case ErrorKind::ForbiddenNA: return "forbidden_na";
        case ErrorKind::UnparseableVerdict: return "unparseable_verdict";
        case ErrorKind::MissingField: return "missing_field";
        case ErrorKind::UnparseableUrl: return "unparseable_url";
        case ErrorKind::AllCandidatesFailed: return "all_candidates_failed";
        case ErrorKind::IndexOutOfRange: return "index_out_of_range";
        case ErrorKind::PartialGrid: return "partial_grid";
        case ErrorKind::WindowClipped: return "window_clipped";
        case ErrorKind::IndivisibleQuota: return "indivisible_quota";
        case ErrorKind::LengthMismatch: return "length_mismatch";
        case ErrorKind::EmptyTask: return "empty_task";
        case ErrorKind::InvalidArgument: return "invalid_argument";
        case ErrorKind::IoError: return "io_error";
    }
    return "unknown";
}

} // namespace shotscout

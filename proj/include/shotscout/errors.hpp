#pragma once
// Error taxonomy shared by all pipeline stages.
//
// Every failure carries a machine-checkable kind plus a human message.
// Retryability is a property of the kind: only TransportError is transient.

#include <stdexcept>
#include <string>

namespace shotscout {

enum class ErrorKind {
    // backends
    Transport,        // network/transport failure, retryable
    MissingFixture,   // replay journal has no entry for this request
    ModelRefusal,     // model declined; never retried
    ContextOverflow,  // request too large; caller must shrink
    MediaToolFailure, // media subprocess failed (stderr attached)
    Unreachable,      // URL could not be fetched
    Truncated,        // fetched content incomplete
    // parsing
    NoToolCall,
    MalformedJson,
    WrongToolName,
    ArityMismatch,
    DuplicateQueries,
    OutOfRange,
    NotInteger,
    ForbiddenNA,
    UnparseableVerdict,
    // domain
    MissingField,
    UnparseableUrl,
    AllCandidatesFailed,
    IndexOutOfRange,
    PartialGrid,
    WindowClipped,
    IndivisibleQuota,
    LengthMismatch,
    EmptyTask,
    InvalidArgument,
    IoError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    bool retryable() const noexcept { return kind_ == ErrorKind::Transport; }

private:
    ErrorKind kind_;
};

} // namespace shotscout

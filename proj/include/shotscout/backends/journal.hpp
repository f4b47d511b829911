#pragma once
// Append-only call journal for deterministic replay.
//
// On disk: <dir>/journal.ndjson with one {request_hash, kind, response}
// object per line, plus <dir>/files/ holding fetched media so a journal
// directory is self-contained. Deterministic failures (refusals, context
// overflow, dead URLs) are journaled as {"__error__": {...}} responses;
// transient transport errors are never journaled.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "shotscout/backends/interfaces.hpp"
#include "shotscout/errors.hpp"

namespace shotscout::backends {

class Journal {
public:
    // Opens (and creates) <dir>; existing rows are loaded for lookup.
    explicit Journal(std::filesystem::path dir);

    void append(const std::string& request_hash, const std::string& kind,
                nlohmann::json response);
    std::optional<nlohmann::json> lookup(const std::string& request_hash,
                                         const std::string& kind) const;

    size_t size() const;
    size_t count_kind(const std::string& kind) const;
    bool contains(const std::string& request_hash) const;

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path files_dir() const { return dir_ / "files"; }

    static nlohmann::json error_response(const Error& e);
    // Rethrows when the response encodes a journaled error.
    static void raise_if_error(const nlohmann::json& response);

private:
    std::filesystem::path dir_;
    mutable std::mutex mu_;
    std::map<std::pair<std::string, std::string>, nlohmann::json> rows_;
    std::ofstream out_;
};

// Call counters shared by a wrapper set; `live` counts outbound calls,
// `replayed` counts journal hits.
struct CallCounters {
    std::atomic<uint64_t> live{0};
    std::atomic<uint64_t> replayed{0};
};

// Replay-only backends: every network-shaped call must hit the journal or
// Error(MissingFixture) is thrown. The media extractor stays live (it is a
// local subprocess, not a network dependency).
Backends make_replay_backends(std::shared_ptr<Journal> journal,
                              std::shared_ptr<MediaExtractor> extractor,
                              std::shared_ptr<CallCounters> counters,
                              std::string platform_suffix = "youtube");

// Wraps live backends so every call (and journalable failure) is recorded.
Backends make_recording_backends(const Backends& live, std::shared_ptr<Journal> journal,
                                 std::shared_ptr<CallCounters> counters,
                                 std::string platform_suffix = "youtube");

} // namespace shotscout::backends

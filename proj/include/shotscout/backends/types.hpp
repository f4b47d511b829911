#pragma once
// Request/response value types for the external-service backends, plus the
// canonical request encodings used as journal keys.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace shotscout::backends {

struct Part {
    enum class Kind { Text, Image, Audio };

    Kind kind = Kind::Text;
    std::string value;  // text content, or a file path for media parts

    static Part text(std::string t) { return {Kind::Text, std::move(t)}; }
    static Part image(std::string path) { return {Kind::Image, std::move(path)}; }
    static Part audio(std::string path) { return {Kind::Audio, std::move(path)}; }

    bool operator==(const Part&) const = default;
};

struct ChatRequest {
    std::optional<std::string> system;
    std::vector<Part> user_parts;
    double temperature = 0.0;  // benchmark configuration pins this to 0
    std::string model;

    size_t media_part_count() const;
    std::string joined_text() const;  // text parts concatenated, for matching/mocks
};

struct EmbeddingRequest {
    Part payload;  // Text or Image
    std::string model;
};

struct SearchResult {
    std::string query;               // outbound query (platform suffix applied)
    std::vector<std::string> urls;   // rank == position, starting at 0
};

// The outbound query string: core keywords plus the platform suffix the
// search tool appends automatically.
std::string apply_platform_suffix(const std::string& query, const std::string& suffix);

// Canonical encodings. Media parts are identified by content hash so a
// journal is stable across file relocation.
nlohmann::json canonical_chat_request(const ChatRequest& req);
std::string chat_request_hash(const ChatRequest& req);
std::string embed_request_hash(const EmbeddingRequest& req);
std::string search_request_hash(const std::string& outbound_query);
std::string fetch_request_hash(const std::string& canonical_url);

} // namespace shotscout::backends

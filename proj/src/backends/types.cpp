#include "shotscout/backends/types.hpp"

#include "shotscout/common/hash.hpp"

namespace shotscout::backends {

using nlohmann::json;

size_t ChatRequest::media_part_count() const {
    size_t n = 0;
    for (const auto& p : user_parts) {
        if (p.kind != Part::Kind::Text) ++n;
    }
    return n;
}

std::string ChatRequest::joined_text() const {
    std::string out;
    for (const auto& p : user_parts) {
        if (p.kind == Part::Kind::Text) {
            if (!out.empty()) out += "\n";
            out += p.value;
        }
    }
    return out;
}

std::string apply_platform_suffix(const std::string& query, const std::string& suffix) {
    if (suffix.empty()) return query;
    return query + " " + suffix;
}

namespace {

json encode_part(const Part& p) {
    switch (p.kind) {
        case Part::Kind::Text: return json::array({"text", p.value});
        case Part::Kind::Image: return json::array({"image", sha256_file_hex(p.value)});
        case Part::Kind::Audio: return json::array({"audio", sha256_file_hex(p.value)});
    }
    return json::array();
}

} // namespace

json canonical_chat_request(const ChatRequest& req) {
    json parts = json::array();
    for (const auto& p : req.user_parts) parts.push_back(encode_part(p));
    return json{
        {"kind", "chat"},
        {"model", req.model},
        {"temperature", req.temperature},
        {"system", req.system ? json(*req.system) : json(nullptr)},
        {"parts", parts},
    };
}

std::string chat_request_hash(const ChatRequest& req) {
    return sha256_hex(canonical_chat_request(req).dump());
}

std::string embed_request_hash(const EmbeddingRequest& req) {
    json j{{"kind", "embed"}, {"model", req.model}, {"payload", encode_part(req.payload)}};
    return sha256_hex(j.dump());
}

std::string search_request_hash(const std::string& outbound_query) {
    json j{{"kind", "search"}, {"query", outbound_query}};
    return sha256_hex(j.dump());
}

std::string fetch_request_hash(const std::string& canonical_url) {
    json j{{"kind", "fetch"}, {"url", canonical_url}};
    return sha256_hex(j.dump());
}

} // namespace shotscout::backends

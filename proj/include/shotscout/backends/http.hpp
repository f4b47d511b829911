#pragma once
// Live HTTP backends. Chat uses the common chat-completion JSON shape with
// inline base64 media parts; search hits a configurable GET endpoint that
// returns {"urls": [...]}.

#include <memory>
#include <string>

#include "shotscout/backends/interfaces.hpp"

namespace shotscout::backends {

struct HttpChatOptions {
    std::string base_url;                     // e.g. "https://api.example.com"
    std::string path = "/v1/chat/completions";
    std::string api_key;                      // sent as Bearer token when set
    int timeout_s = 120;
};

class HttpChatBackend : public ChatBackend {
public:
    explicit HttpChatBackend(HttpChatOptions options);
    std::string chat(const ChatRequest& req) override;

    // Exposed for tests: the exact JSON body sent for a request.
    static std::string request_body(const ChatRequest& req);

private:
    HttpChatOptions options_;
};

struct HttpEmbeddingOptions {
    std::string base_url;
    std::string path = "/embeddings";
    std::string api_key;
    int timeout_s = 60;
};

// POST {"model", "input": {"type": "text"|"image", "data": <text|base64>}}
// -> {"embedding": [...]}.
class HttpEmbeddingBackend : public EmbeddingBackend {
public:
    explicit HttpEmbeddingBackend(HttpEmbeddingOptions options);
    std::vector<float> embed(const EmbeddingRequest& req) override;

private:
    HttpEmbeddingOptions options_;
};

struct HttpSearchOptions {
    std::string base_url;
    std::string path = "/search";
    std::string platform_suffix = "youtube";
    int timeout_s = 30;
};

class HttpSearchBackend : public SearchBackend {
public:
    explicit HttpSearchBackend(HttpSearchOptions options);
    SearchResult search(const std::string& query) override;

private:
    HttpSearchOptions options_;
};

} // namespace shotscout::backends

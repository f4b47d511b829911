#include "shotscout/backends/http.hpp"

#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "shotscout/common/base64.hpp"

namespace shotscout::backends {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json encode_user_part(const Part& part) {
    switch (part.kind) {
        case Part::Kind::Text:
            return json{{"type", "text"}, {"text", part.value}};
        case Part::Kind::Image:
            return json{{"type", "image_url"},
                        {"image_url",
                         json{{"url", "data:image/jpeg;base64," +
                                          base64_encode(read_file(part.value))}}}};
        case Part::Kind::Audio:
            return json{{"type", "input_audio"},
                        {"input_audio", json{{"data", base64_encode(read_file(part.value))},
                                             {"format", "mp3"}}}};
    }
    return json{};
}

// 408/429/5xx and connection failures are transient; everything else is a
// terminal protocol answer.
bool transient_status(int status) {
    return status == 408 || status == 429 || status >= 500;
}

} // namespace

HttpChatBackend::HttpChatBackend(HttpChatOptions options) : options_(std::move(options)) {}

std::string HttpChatBackend::request_body(const ChatRequest& req) {
    json content = json::array();
    for (const auto& part : req.user_parts) content.push_back(encode_user_part(part));
    json messages = json::array();
    if (req.system) {
        messages.push_back(json{{"role", "system"}, {"content", *req.system}});
    }
    messages.push_back(json{{"role", "user"}, {"content", content}});
    return json{{"model", req.model}, {"temperature", req.temperature}, {"messages", messages}}
        .dump();
}

std::string HttpChatBackend::chat(const ChatRequest& req) {
    httplib::Client client(options_.base_url);
    client.set_read_timeout(options_.timeout_s, 0);
    client.set_connection_timeout(10, 0);
    httplib::Headers headers;
    if (!options_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + options_.api_key);
    }

    auto res = client.Post(options_.path, headers, request_body(req), "application/json");
    if (!res) {
        throw Error(ErrorKind::Transport, "chat endpoint unreachable: " + options_.base_url);
    }
    if (transient_status(res->status)) {
        throw Error(ErrorKind::Transport, "chat endpoint status " + std::to_string(res->status));
    }

    json body;
    try {
        body = json::parse(res->body);
    } catch (const json::exception&) {
        throw Error(ErrorKind::Transport, "unparseable chat response body");
    }
    if (res->status != 200) {
        const std::string err = body.contains("error") ? body["error"].dump() : res->body;
        if (err.find("context_length") != std::string::npos ||
            err.find("too large") != std::string::npos) {
            throw Error(ErrorKind::ContextOverflow, err.substr(0, 240));
        }
        throw Error(ErrorKind::ModelRefusal,
                    "status " + std::to_string(res->status) + ": " + err.substr(0, 240));
    }

    try {
        const json& choice = body.at("choices").at(0);
        if (choice.value("finish_reason", "") == "content_filter") {
            throw Error(ErrorKind::ModelRefusal, "content filtered");
        }
        return choice.at("message").at("content").get<std::string>();
    } catch (const json::exception&) {
        throw Error(ErrorKind::Transport, "chat response missing choices[0].message.content");
    }
}

HttpEmbeddingBackend::HttpEmbeddingBackend(HttpEmbeddingOptions options)
    : options_(std::move(options)) {}

std::vector<float> HttpEmbeddingBackend::embed(const EmbeddingRequest& req) {
    json input;
    if (req.payload.kind == Part::Kind::Text) {
        input = json{{"type", "text"}, {"data", req.payload.value}};
    } else {
        input = json{{"type", "image"}, {"data", base64_encode(read_file(req.payload.value))}};
    }
    httplib::Client client(options_.base_url);
    client.set_read_timeout(options_.timeout_s, 0);
    httplib::Headers headers;
    if (!options_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + options_.api_key);
    }
    auto res = client.Post(options_.path, headers,
                           json{{"model", req.model}, {"input", input}}.dump(),
                           "application/json");
    if (!res) {
        throw Error(ErrorKind::Transport, "embedding endpoint unreachable: " + options_.base_url);
    }
    if (res->status != 200) {
        throw Error(ErrorKind::Transport,
                    "embedding endpoint status " + std::to_string(res->status));
    }
    try {
        return json::parse(res->body).at("embedding").get<std::vector<float>>();
    } catch (const json::exception&) {
        throw Error(ErrorKind::Transport, "embedding response missing embedding array");
    }
}

HttpSearchBackend::HttpSearchBackend(HttpSearchOptions options) : options_(std::move(options)) {}

SearchResult HttpSearchBackend::search(const std::string& query) {
    if (query.empty()) throw Error(ErrorKind::InvalidArgument, "empty search query");

    SearchResult result;
    result.query = apply_platform_suffix(query, options_.platform_suffix);

    httplib::Client client(options_.base_url);
    client.set_read_timeout(options_.timeout_s, 0);
    httplib::Params params{{"q", result.query}};
    auto res = client.Get(options_.path, params, httplib::Headers{});
    if (!res) {
        throw Error(ErrorKind::Transport, "search endpoint unreachable: " + options_.base_url);
    }
    if (res->status != 200) {
        throw Error(ErrorKind::Transport, "search endpoint status " + std::to_string(res->status));
    }
    try {
        json body = json::parse(res->body);
        result.urls = body.at("urls").get<std::vector<std::string>>();
    } catch (const json::exception&) {
        throw Error(ErrorKind::Transport, "search response missing urls array");
    }
    return result;
}

} // namespace shotscout::backends

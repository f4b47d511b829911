#pragma once
// Deterministic in-process backends for offline runs and tests.

#include <atomic>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "shotscout/backends/interfaces.hpp"
#include "shotscout/errors.hpp"

namespace shotscout::backends {

// Mapping is fixed and documented: "echo[<model>] <text parts joined by ' | '>
// (media=<count>)". Useful wherever any deterministic answer will do.
class EchoChat : public ChatBackend {
public:
    std::string chat(const ChatRequest& req) override;
};

// Rule-driven chat mock. Rules are matched in insertion order; the first rule
// whose needles are all substrings of the request text wins. Each rule holds
// a FIFO of responses; the last one repeats once the queue drains. A response
// may instead carry an error kind to throw.
class ScriptedChat : public ChatBackend {
public:
    struct Response {
        std::string text;
        std::optional<ErrorKind> error;

        static Response ok(std::string t) { return {std::move(t), std::nullopt}; }
        static Response fail(ErrorKind kind, std::string message = "scripted failure") {
            return {std::move(message), kind};
        }
    };

    void add_rule(std::vector<std::string> needles, std::vector<Response> responses);
    std::string chat(const ChatRequest& req) override;

    int calls() const;
    const std::vector<ChatRequest>& requests() const { return requests_; }

private:
    struct Rule {
        std::vector<std::string> needles;
        std::deque<Response> responses;
    };
    mutable std::mutex mu_;
    std::vector<Rule> rules_;
    std::vector<ChatRequest> requests_;
};

// Single canned answer regardless of input; counts calls.
class FixedChat : public ChatBackend {
public:
    explicit FixedChat(std::string reply) : reply_(std::move(reply)) {}
    std::string chat(const ChatRequest&) override {
        ++calls_;
        return reply_;
    }
    int calls() const { return calls_; }

private:
    std::string reply_;
    int calls_ = 0;
};

// Throws ContextOverflow while the request carries more than `max_media`
// media parts, otherwise delegates.
class OverflowGate : public ChatBackend {
public:
    OverflowGate(std::shared_ptr<ChatBackend> inner, size_t max_media)
        : inner_(std::move(inner)), max_media_(max_media) {}
    std::string chat(const ChatRequest& req) override;

private:
    std::shared_ptr<ChatBackend> inner_;
    size_t max_media_;
};

// Stable 8-dim embedding derived from the payload's content hash (file bytes
// for media, UTF-8 bytes for text), scaled to unit norm.
class HashEmbedding : public EmbeddingBackend {
public:
    static constexpr size_t kDim = 8;
    std::vector<float> embed(const EmbeddingRequest& req) override;
    int calls() const { return calls_; }

private:
    std::atomic<int> calls_{0};
};

// Explicit vectors per key; keys are the text payload or the media file's
// basename. Unknown keys throw Error(MissingFixture).
class FixtureEmbedding : public EmbeddingBackend {
public:
    void set(std::string key, std::vector<float> vec);
    std::vector<float> embed(const EmbeddingRequest& req) override;
    int calls() const { return calls_; }

private:
    std::mutex mu_;
    std::map<std::string, std::vector<float>> table_;
    std::atomic<int> calls_{0};
};

// Outbound-query keyed result table; unknown queries yield an empty result.
class TableSearch : public SearchBackend {
public:
    explicit TableSearch(std::string suffix = "youtube") : suffix_(std::move(suffix)) {}
    // `query` is the core query; the suffix is applied internally.
    void set(const std::string& query, std::vector<std::string> urls);
    SearchResult search(const std::string& query) override;
    int calls() const { return calls_; }

private:
    std::string suffix_;
    std::mutex mu_;
    std::map<std::string, std::vector<std::string>> table_;
    std::atomic<int> calls_{0};
};

// Serves fetches from local files (copy into dest_dir + real probe), with
// per-URL error injection.
class FixtureFetcher : public VideoFetcher {
public:
    explicit FixtureFetcher(std::shared_ptr<MediaExtractor> extractor)
        : extractor_(std::move(extractor)) {}

    void set_file(const std::string& canonical_url, std::filesystem::path file);
    void set_error(const std::string& canonical_url, ErrorKind kind);

    model::VideoAsset fetch(const std::string& canonical_url,
                            const std::filesystem::path& dest_dir) override;
    int calls() const { return calls_; }

private:
    std::shared_ptr<MediaExtractor> extractor_;
    std::mutex mu_;
    std::map<std::string, std::filesystem::path> files_;
    std::map<std::string, ErrorKind> errors_;
    std::atomic<int> calls_{0};
};

// Pass-through decorators that count invocations (cache assertions).
class CountingExtractor : public MediaExtractor {
public:
    explicit CountingExtractor(std::shared_ptr<MediaExtractor> inner)
        : inner_(std::move(inner)) {}

    ProbeInfo probe(const std::filesystem::path& media) override;
    void extract_frame(const std::filesystem::path& video, double t,
                       const std::filesystem::path& out_jpg) override;
    void extract_frames(const std::filesystem::path& video, const std::vector<double>& ts,
                        const std::filesystem::path& out_dir) override;
    void extract_audio(const std::filesystem::path& video, const std::filesystem::path& out_mp3,
                       std::optional<std::pair<double, double>> window) override;

    int extraction_calls() const { return extraction_calls_; }

private:
    std::shared_ptr<MediaExtractor> inner_;
    std::atomic<int> extraction_calls_{0};
};

class CountingFetcher : public VideoFetcher {
public:
    explicit CountingFetcher(std::shared_ptr<VideoFetcher> inner) : inner_(std::move(inner)) {}
    model::VideoAsset fetch(const std::string& canonical_url,
                            const std::filesystem::path& dest_dir) override {
        ++calls_;
        return inner_->fetch(canonical_url, dest_dir);
    }
    int calls() const { return calls_; }

private:
    std::shared_ptr<VideoFetcher> inner_;
    std::atomic<int> calls_{0};
};

} // namespace shotscout::backends

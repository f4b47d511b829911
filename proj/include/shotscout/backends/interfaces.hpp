#pragma once
// Abstract interfaces to every external dependency. All implementations must
// be safe to call from multiple threads.

#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "shotscout/backends/types.hpp"
#include "shotscout/errors.hpp"
#include "shotscout/model/types.hpp"

namespace shotscout::backends {

class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    // Returns the raw model text unmodified. Throws Error with kind
    // Transport (retryable), ModelRefusal, ContextOverflow or MissingFixture.
    virtual std::string chat(const ChatRequest& req) = 0;
};

class EmbeddingBackend {
public:
    virtual ~EmbeddingBackend() = default;
    virtual std::vector<float> embed(const EmbeddingRequest& req) = 0;
};

class SearchBackend {
public:
    virtual ~SearchBackend() = default;
    // Applies the platform suffix before going out. Empty url list is a
    // valid result; throws Error(InvalidArgument) on an empty query.
    virtual SearchResult search(const std::string& query) = 0;
};

class VideoFetcher {
public:
    virtual ~VideoFetcher() = default;
    // Downloads `url` into dest_dir (file name chosen by the fetcher) and
    // returns the probed asset. Throws Error(Unreachable) when the source
    // cannot be reached and Error(Truncated) when content is incomplete.
    virtual model::VideoAsset fetch(const std::string& canonical_url,
                                    const std::filesystem::path& dest_dir) = 0;
};

struct ProbeInfo {
    double duration_s = 0.0;
    int width = 0;
    int height = 0;
    bool has_audio = false;
};

class MediaExtractor {
public:
    virtual ~MediaExtractor() = default;
    virtual ProbeInfo probe(const std::filesystem::path& media) = 0;
    // Nearest-frame seek; deterministic for a fixed file and t.
    virtual void extract_frame(const std::filesystem::path& video, double t_seconds,
                               const std::filesystem::path& out_jpg) = 0;
    // Batch form: writes frame_0000.jpg ... into out_dir, one per timestamp,
    // in a single subprocess.
    virtual void extract_frames(const std::filesystem::path& video,
                                const std::vector<double>& timestamps,
                                const std::filesystem::path& out_dir) = 0;
    // Full track when window is empty, else [start, start+duration).
    virtual void extract_audio(const std::filesystem::path& video,
                               const std::filesystem::path& out_mp3,
                               std::optional<std::pair<double, double>> window) = 0;
};

// Everything a pipeline stage may need, bundled.
struct Backends {
    std::shared_ptr<ChatBackend> chat;
    std::shared_ptr<EmbeddingBackend> embed;
    std::shared_ptr<SearchBackend> search;
    std::shared_ptr<VideoFetcher> fetcher;
    std::shared_ptr<MediaExtractor> extractor;
};

} // namespace shotscout::backends

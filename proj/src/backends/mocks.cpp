#include "shotscout/backends/mocks.hpp"

#include <cstring>

#include "shotscout/common/hash.hpp"

namespace shotscout::backends {

namespace fs = std::filesystem;

std::string EchoChat::chat(const ChatRequest& req) {
    std::string text;
    for (const auto& p : req.user_parts) {
        if (p.kind == Part::Kind::Text) {
            if (!text.empty()) text += " | ";
            text += p.value;
        }
    }
    return "echo[" + req.model + "] " + text +
           " (media=" + std::to_string(req.media_part_count()) + ")";
}

void ScriptedChat::add_rule(std::vector<std::string> needles, std::vector<Response> responses) {
    std::lock_guard lock(mu_);
    Rule rule;
    rule.needles = std::move(needles);
    for (auto& r : responses) rule.responses.push_back(std::move(r));
    rules_.push_back(std::move(rule));
}

std::string ScriptedChat::chat(const ChatRequest& req) {
    const std::string text = req.joined_text();
    std::lock_guard lock(mu_);
    requests_.push_back(req);
    for (auto& rule : rules_) {
        bool all = true;
        for (const auto& needle : rule.needles) {
            if (text.find(needle) == std::string::npos) {
                all = false;
                break;
            }
        }
        if (!all) continue;
        if (rule.responses.empty()) {
            throw Error(ErrorKind::InvalidArgument, "scripted rule has no responses");
        }
        Response r = rule.responses.front();
        if (rule.responses.size() > 1) rule.responses.pop_front();  // last response sticks
        if (r.error) throw Error(*r.error, r.text);
        return r.text;
    }
    throw Error(ErrorKind::InvalidArgument,
                "no scripted rule matches request: " + text.substr(0, 120));
}

int ScriptedChat::calls() const {
    std::lock_guard lock(mu_);
    return static_cast<int>(requests_.size());
}

std::string OverflowGate::chat(const ChatRequest& req) {
    if (req.media_part_count() > max_media_) {
        throw Error(ErrorKind::ContextOverflow,
                    std::to_string(req.media_part_count()) + " media parts > " +
                        std::to_string(max_media_));
    }
    return inner_->chat(req);
}

std::vector<float> HashEmbedding::embed(const EmbeddingRequest& req) {
    ++calls_;
    std::string digest;
    if (req.payload.kind == Part::Kind::Text) {
        digest = sha256_hex(req.payload.value);
    } else {
        digest = sha256_file_hex(req.payload.value);
    }
    // fold hex digest into kDim floats in [-1, 1], then normalize
    std::vector<float> v(kDim, 0.0f);
    for (size_t i = 0; i < kDim; ++i) {
        unsigned long chunk = std::stoul(digest.substr(i * 8, 8), nullptr, 16);
        v[i] = static_cast<float>(static_cast<double>(chunk) / 2147483648.0 - 1.0);
    }
    double norm = 0;
    for (float x : v) norm += static_cast<double>(x) * x;
    norm = std::sqrt(norm);
    if (norm > 0) {
        for (float& x : v) x = static_cast<float>(x / norm);
    }
    return v;
}

void FixtureEmbedding::set(std::string key, std::vector<float> vec) {
    std::lock_guard lock(mu_);
    table_[std::move(key)] = std::move(vec);
}

std::vector<float> FixtureEmbedding::embed(const EmbeddingRequest& req) {
    ++calls_;
    std::string key = req.payload.kind == Part::Kind::Text
                          ? req.payload.value
                          : fs::path(req.payload.value).filename().string();
    std::lock_guard lock(mu_);
    auto it = table_.find(key);
    if (it == table_.end()) {
        throw Error(ErrorKind::MissingFixture, "no embedding fixture for key: " + key);
    }
    return it->second;
}

void TableSearch::set(const std::string& query, std::vector<std::string> urls) {
    std::lock_guard lock(mu_);
    table_[apply_platform_suffix(query, suffix_)] = std::move(urls);
}

SearchResult TableSearch::search(const std::string& query) {
    if (query.empty()) throw Error(ErrorKind::InvalidArgument, "empty search query");
    ++calls_;
    SearchResult result;
    result.query = apply_platform_suffix(query, suffix_);
    std::lock_guard lock(mu_);
    auto it = table_.find(result.query);
    if (it != table_.end()) result.urls = it->second;
    return result;
}

void FixtureFetcher::set_file(const std::string& canonical_url, fs::path file) {
    std::lock_guard lock(mu_);
    files_[canonical_url] = std::move(file);
}

void FixtureFetcher::set_error(const std::string& canonical_url, ErrorKind kind) {
    std::lock_guard lock(mu_);
    errors_[canonical_url] = kind;
}

model::VideoAsset FixtureFetcher::fetch(const std::string& canonical_url,
                                        const fs::path& dest_dir) {
    ++calls_;
    fs::path src;
    {
        std::lock_guard lock(mu_);
        if (auto it = errors_.find(canonical_url); it != errors_.end()) {
            throw Error(it->second, "injected failure for " + canonical_url);
        }
        auto it = files_.find(canonical_url);
        if (it == files_.end()) {
            throw Error(ErrorKind::Unreachable, "no fixture file for " + canonical_url);
        }
        src = it->second;
    }
    fs::create_directories(dest_dir);
    const fs::path dest = dest_dir / ("video" + src.extension().string());
    fs::copy_file(src, dest, fs::copy_options::overwrite_existing);

    ProbeInfo info = extractor_->probe(dest);
    if (info.duration_s <= 0) {
        throw Error(ErrorKind::Truncated, "probed duration <= 0 for " + canonical_url);
    }
    model::VideoAsset asset;
    asset.url = canonical_url;
    asset.local_path = dest.string();
    asset.duration_s = info.duration_s;
    asset.width = info.width;
    asset.height = info.height;
    asset.probe_ok = true;
    return asset;
}

ProbeInfo CountingExtractor::probe(const fs::path& media) { return inner_->probe(media); }

void CountingExtractor::extract_frame(const fs::path& video, double t,
                                      const fs::path& out_jpg) {
    ++extraction_calls_;
    inner_->extract_frame(video, t, out_jpg);
}

void CountingExtractor::extract_frames(const fs::path& video, const std::vector<double>& ts,
                                       const fs::path& out_dir) {
    ++extraction_calls_;
    inner_->extract_frames(video, ts, out_dir);
}

void CountingExtractor::extract_audio(const fs::path& video, const fs::path& out_mp3,
                                      std::optional<std::pair<double, double>> window) {
    ++extraction_calls_;
    inner_->extract_audio(video, out_mp3, window);
}

} // namespace shotscout::backends

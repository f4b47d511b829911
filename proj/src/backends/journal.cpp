#include "shotscout/backends/journal.hpp"

#include <utility>

#include "shotscout/backends/types.hpp"
#include "shotscout/common/hash.hpp"

namespace shotscout::backends {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {
constexpr const char* kJournalFile = "journal.ndjson";
} // namespace

Journal::Journal(fs::path dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
    fs::create_directories(files_dir());
    const fs::path file = dir_ / kJournalFile;
    if (fs::exists(file)) {
        std::ifstream in(file);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json row = json::parse(line);
            rows_[{row.at("request_hash").get<std::string>(),
                   row.at("kind").get<std::string>()}] = row.at("response");
        }
    }
    out_.open(file, std::ios::app);
    if (!out_) throw Error(ErrorKind::IoError, "cannot open journal at " + file.string());
}

void Journal::append(const std::string& request_hash, const std::string& kind, json response) {
    json row{{"request_hash", request_hash}, {"kind", kind}, {"response", response}};
    std::lock_guard lock(mu_);
    // one line per write so concurrent appends stay well-formed
    out_ << row.dump() << '\n';
    out_.flush();
    rows_[{request_hash, kind}] = std::move(response);
}

std::optional<json> Journal::lookup(const std::string& request_hash,
                                    const std::string& kind) const {
    std::lock_guard lock(mu_);
    auto it = rows_.find({request_hash, kind});
    if (it == rows_.end()) return std::nullopt;
    return it->second;
}

size_t Journal::size() const {
    std::lock_guard lock(mu_);
    return rows_.size();
}

size_t Journal::count_kind(const std::string& kind) const {
    std::lock_guard lock(mu_);
    size_t n = 0;
    for (const auto& [key, value] : rows_) {
        if (key.second == kind) ++n;
    }
    return n;
}

bool Journal::contains(const std::string& request_hash) const {
    std::lock_guard lock(mu_);
    for (const auto& [key, value] : rows_) {
        if (key.first == request_hash) return true;
    }
    return false;
}

json Journal::error_response(const Error& e) {
    return json{{"__error__", json{{"kind", to_string(e.kind())}, {"message", e.what()}}}};
}

void Journal::raise_if_error(const json& response) {
    if (!response.is_object() || !response.contains("__error__")) return;
    const json& err = response.at("__error__");
    const std::string kind_name = err.at("kind").get<std::string>();
    const std::string message = err.value("message", "");
    for (int k = 0; k <= static_cast<int>(ErrorKind::IoError); ++k) {
        auto kind = static_cast<ErrorKind>(k);
        if (kind_name == to_string(kind)) throw Error(kind, message);
    }
    throw Error(ErrorKind::InvalidArgument, "journaled error of unknown kind: " + kind_name);
}

// ---------------------------------------------------------------------------
// replay implementations
// ---------------------------------------------------------------------------

namespace {

class ReplayChat : public ChatBackend {
public:
    ReplayChat(std::shared_ptr<Journal> journal, std::shared_ptr<CallCounters> counters)
        : journal_(std::move(journal)), counters_(std::move(counters)) {}

    std::string chat(const ChatRequest& req) override {
        auto row = journal_->lookup(chat_request_hash(req), "chat");
        if (!row) throw Error(ErrorKind::MissingFixture, "no chat fixture for request");
        Journal::raise_if_error(*row);
        counters_->replayed++;
        return row->get<std::string>();
    }

private:
    std::shared_ptr<Journal> journal_;
    std::shared_ptr<CallCounters> counters_;
};

class ReplayEmbed : public EmbeddingBackend {
public:
    ReplayEmbed(std::shared_ptr<Journal> journal, std::shared_ptr<CallCounters> counters)
        : journal_(std::move(journal)), counters_(std::move(counters)) {}

    std::vector<float> embed(const EmbeddingRequest& req) override {
        auto row = journal_->lookup(embed_request_hash(req), "embed");
        if (!row) throw Error(ErrorKind::MissingFixture, "no embed fixture for request");
        Journal::raise_if_error(*row);
        counters_->replayed++;
        return row->get<std::vector<float>>();
    }

private:
    std::shared_ptr<Journal> journal_;
    std::shared_ptr<CallCounters> counters_;
};

class ReplaySearch : public SearchBackend {
public:
    ReplaySearch(std::shared_ptr<Journal> journal, std::shared_ptr<CallCounters> counters,
                 std::string suffix)
        : journal_(std::move(journal)), counters_(std::move(counters)),
          suffix_(std::move(suffix)) {}

    SearchResult search(const std::string& query) override {
        if (query.empty()) throw Error(ErrorKind::InvalidArgument, "empty search query");
        const std::string outbound = apply_platform_suffix(query, suffix_);
        auto row = journal_->lookup(search_request_hash(outbound), "search");
        if (!row) throw Error(ErrorKind::MissingFixture, "no search fixture for: " + outbound);
        Journal::raise_if_error(*row);
        counters_->replayed++;
        SearchResult result;
        result.query = outbound;
        result.urls = row->at("urls").get<std::vector<std::string>>();
        return result;
    }

private:
    std::shared_ptr<Journal> journal_;
    std::shared_ptr<CallCounters> counters_;
    std::string suffix_;
};

class ReplayFetcher : public VideoFetcher {
public:
    ReplayFetcher(std::shared_ptr<Journal> journal, std::shared_ptr<CallCounters> counters)
        : journal_(std::move(journal)), counters_(std::move(counters)) {}

    model::VideoAsset fetch(const std::string& canonical_url,
                            const fs::path& dest_dir) override {
        auto row = journal_->lookup(fetch_request_hash(canonical_url), "fetch");
        if (!row) throw Error(ErrorKind::MissingFixture, "no fetch fixture for " + canonical_url);
        Journal::raise_if_error(*row);
        counters_->replayed++;

        const fs::path src = journal_->dir() / row->at("file").get<std::string>();
        if (!fs::exists(src)) {
            throw Error(ErrorKind::MissingFixture, "journal media file missing: " + src.string());
        }
        fs::create_directories(dest_dir);
        const fs::path dest = dest_dir / ("video" + src.extension().string());
        fs::copy_file(src, dest, fs::copy_options::overwrite_existing);

        model::VideoAsset asset;
        asset.url = canonical_url;
        asset.local_path = dest.string();
        asset.duration_s = row->at("duration_s").get<double>();
        asset.width = row->at("width").get<int>();
        asset.height = row->at("height").get<int>();
        asset.probe_ok = true;
        return asset;
    }

private:
    std::shared_ptr<Journal> journal_;
    std::shared_ptr<CallCounters> counters_;
};

// ---------------------------------------------------------------------------
// recording wrappers
// ---------------------------------------------------------------------------

bool journalable(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::ModelRefusal:
        case ErrorKind::ContextOverflow:
        case ErrorKind::Unreachable:
        case ErrorKind::Truncated:
            return true;
        default:
            return false;
    }
}

class RecordingChat : public ChatBackend {
public:
    RecordingChat(std::shared_ptr<ChatBackend> inner, std::shared_ptr<Journal> journal,
                  std::shared_ptr<CallCounters> counters)
        : inner_(std::move(inner)), journal_(std::move(journal)),
          counters_(std::move(counters)) {}

    std::string chat(const ChatRequest& req) override {
        const std::string hash = chat_request_hash(req);
        counters_->live++;
        try {
            std::string out = inner_->chat(req);
            journal_->append(hash, "chat", out);
            return out;
        } catch (const Error& e) {
            if (journalable(e)) journal_->append(hash, "chat", Journal::error_response(e));
            throw;
        }
    }

private:
    std::shared_ptr<ChatBackend> inner_;
    std::shared_ptr<Journal> journal_;
    std::shared_ptr<CallCounters> counters_;
};

class RecordingEmbed : public EmbeddingBackend {
public:
    RecordingEmbed(std::shared_ptr<EmbeddingBackend> inner, std::shared_ptr<Journal> journal,
                   std::shared_ptr<CallCounters> counters)
        : inner_(std::move(inner)), journal_(std::move(journal)),
          counters_(std::move(counters)) {}

    std::vector<float> embed(const EmbeddingRequest& req) override {
        counters_->live++;
        std::vector<float> out = inner_->embed(req);
        journal_->append(embed_request_hash(req), "embed", out);
        return out;
    }

private:
    std::shared_ptr<EmbeddingBackend> inner_;
    std::shared_ptr<Journal> journal_;
    std::shared_ptr<CallCounters> counters_;
};

class RecordingSearch : public SearchBackend {
public:
    RecordingSearch(std::shared_ptr<SearchBackend> inner, std::shared_ptr<Journal> journal,
                    std::shared_ptr<CallCounters> counters, std::string suffix)
        : inner_(std::move(inner)), journal_(std::move(journal)),
          counters_(std::move(counters)), suffix_(std::move(suffix)) {}

    SearchResult search(const std::string& query) override {
        counters_->live++;
        SearchResult result = inner_->search(query);
        // key on the outbound form the inner backend reports; fall back to
        // computing it so a replay lookup always agrees
        std::string outbound =
            result.query.empty() ? apply_platform_suffix(query, suffix_) : result.query;
        journal_->append(search_request_hash(outbound), "search",
                         nlohmann::json{{"query", outbound}, {"urls", result.urls}});
        return result;
    }

private:
    std::shared_ptr<SearchBackend> inner_;
    std::shared_ptr<Journal> journal_;
    std::shared_ptr<CallCounters> counters_;
    std::string suffix_;
};

class RecordingFetcher : public VideoFetcher {
public:
    RecordingFetcher(std::shared_ptr<VideoFetcher> inner, std::shared_ptr<Journal> journal,
                     std::shared_ptr<CallCounters> counters)
        : inner_(std::move(inner)), journal_(std::move(journal)),
          counters_(std::move(counters)) {}

    model::VideoAsset fetch(const std::string& canonical_url,
                            const fs::path& dest_dir) override {
        const std::string hash = fetch_request_hash(canonical_url);
        counters_->live++;
        try {
            model::VideoAsset asset = inner_->fetch(canonical_url, dest_dir);
            const fs::path src = asset.local_path;
            const std::string stored =
                "files/" + sha256_hex(canonical_url) + src.extension().string();
            fs::copy_file(src, journal_->dir() / stored, fs::copy_options::overwrite_existing);
            journal_->append(hash, "fetch",
                             nlohmann::json{{"file", stored},
                                            {"duration_s", asset.duration_s},
                                            {"width", asset.width},
                                            {"height", asset.height}});
            return asset;
        } catch (const Error& e) {
            if (journalable(e)) journal_->append(hash, "fetch", Journal::error_response(e));
            throw;
        }
    }

private:
    std::shared_ptr<VideoFetcher> inner_;
    std::shared_ptr<Journal> journal_;
    std::shared_ptr<CallCounters> counters_;
};

} // namespace

Backends make_replay_backends(std::shared_ptr<Journal> journal,
                              std::shared_ptr<MediaExtractor> extractor,
                              std::shared_ptr<CallCounters> counters,
                              std::string platform_suffix) {
    Backends b;
    b.chat = std::make_shared<ReplayChat>(journal, counters);
    b.embed = std::make_shared<ReplayEmbed>(journal, counters);
    b.search = std::make_shared<ReplaySearch>(journal, counters, std::move(platform_suffix));
    b.fetcher = std::make_shared<ReplayFetcher>(journal, counters);
    b.extractor = std::move(extractor);
    return b;
}

Backends make_recording_backends(const Backends& live, std::shared_ptr<Journal> journal,
                                 std::shared_ptr<CallCounters> counters,
                                 std::string platform_suffix) {
    Backends b;
    b.chat = std::make_shared<RecordingChat>(live.chat, journal, counters);
    b.embed = std::make_shared<RecordingEmbed>(live.embed, journal, counters);
    b.search =
        std::make_shared<RecordingSearch>(live.search, journal, counters, std::move(platform_suffix));
    b.fetcher = std::make_shared<RecordingFetcher>(live.fetcher, journal, counters);
    b.extractor = live.extractor;
    return b;
}

} // namespace shotscout::backends

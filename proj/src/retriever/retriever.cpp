#include "shotscout/retriever/retriever.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "shotscout/common/hash.hpp"
#include "shotscout/common/strings.hpp"
#include "shotscout/errors.hpp"

namespace shotscout::retriever {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ParsedUrl {
    std::string scheme;
    std::string host;
    std::string path;    // starts with '/' or empty
    std::string query;   // without '?'
};

ParsedUrl parse_url(const std::string& raw) {
    const std::string url = trim(raw);
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos || scheme_end == 0) {
        throw Error(ErrorKind::UnparseableUrl, "no scheme in: " + raw);
    }
    ParsedUrl p;
    p.scheme = to_lower(url.substr(0, scheme_end));
    if (p.scheme != "http" && p.scheme != "https" && p.scheme != "file") {
        throw Error(ErrorKind::UnparseableUrl, "unsupported scheme: " + p.scheme);
    }
    std::string rest = url.substr(scheme_end + 3);
    if (size_t frag = rest.find('#'); frag != std::string::npos) rest = rest.substr(0, frag);

    size_t path_start = rest.find_first_of("/?");
    std::string authority = path_start == std::string::npos ? rest : rest.substr(0, path_start);
    if (p.scheme != "file" && authority.empty()) {
        throw Error(ErrorKind::UnparseableUrl, "no host in: " + raw);
    }
    if (authority.find(' ') != std::string::npos) {
        throw Error(ErrorKind::UnparseableUrl, "whitespace in host: " + raw);
    }
    p.host = to_lower(authority);
    // strip default ports
    if (p.scheme == "http" && ends_with(p.host, ":80")) p.host.resize(p.host.size() - 3);
    if (p.scheme == "https" && ends_with(p.host, ":443")) p.host.resize(p.host.size() - 4);

    if (path_start != std::string::npos) {
        std::string tail = rest.substr(path_start);
        size_t q = tail.find('?');
        p.path = q == std::string::npos ? tail : tail.substr(0, q);
        if (q != std::string::npos) p.query = tail.substr(q + 1);
    }
    return p;
}

std::map<std::string, std::string> parse_query(const std::string& query) {
    std::map<std::string, std::string> params;
    for (const auto& pair : split(query, '&')) {
        if (pair.empty()) continue;
        size_t eq = pair.find('=');
        std::string key = eq == std::string::npos ? pair : pair.substr(0, eq);
        std::string value = eq == std::string::npos ? "" : pair.substr(eq + 1);
        if (!key.empty()) params.emplace(std::move(key), std::move(value));
    }
    return params;
}

bool tracking_param(const std::string& key) {
    return starts_with(key, "utm_") || key == "fbclid" || key == "gclid" || key == "si" ||
           key == "feature" || key == "ref" || key == "ref_src" || key == "pp";
}

bool youtube_host(const std::string& host) {
    return host == "youtube.com" || host == "www.youtube.com" || host == "m.youtube.com" ||
           host == "music.youtube.com" || host == "youtu.be" || host == "www.youtu.be";
}

std::string youtube_watch(const std::string& video_id) {
    return "https://www.youtube.com/watch?v=" + video_id;
}

std::string first_path_segment_after(const std::string& path, const std::string& prefix) {
    std::string id = path.substr(prefix.size());
    if (size_t slash = id.find('/'); slash != std::string::npos) id = id.substr(0, slash);
    return id;
}

} // namespace

std::string canonicalize(const std::string& url) {
    ParsedUrl p = parse_url(url);

    if (p.scheme == "file") {
        return "file://" + p.host + fs::path(p.path).lexically_normal().string();
    }

    if (youtube_host(p.host)) {
        auto params = parse_query(p.query);
        if (p.host == "youtu.be" || p.host == "www.youtu.be") {
            std::string id = first_path_segment_after(p.path, "/");
            if (!id.empty()) return youtube_watch(id);
        }
        if (p.path == "/watch" && params.count("v")) return youtube_watch(params["v"]);
        for (const char* prefix : {"/shorts/", "/embed/", "/live/", "/v/"}) {
            if (starts_with(p.path, prefix)) {
                std::string id = first_path_segment_after(p.path, prefix);
                if (!id.empty()) return youtube_watch(id);
            }
        }
        // non-video YouTube page: fall through to generic normalization
        p.host = "www.youtube.com";
        p.scheme = "https";
    }

    std::string out = p.scheme + "://" + p.host;
    if (!p.path.empty() && p.path != "/") out += p.path;
    auto params = parse_query(p.query);
    std::string qs;
    for (const auto& [key, value] : params) {  // std::map: sorted, deterministic
        if (tracking_param(key)) continue;
        qs += (qs.empty() ? "?" : "&") + key;
        if (!value.empty()) qs += "=" + value;
    }
    return out + qs;
}

std::optional<model::VideoAsset> cache_lookup(const std::string& canonical_url,
                                              const fs::path& cache_dir) {
    const fs::path dir = cache_dir / "videos" / sha256_hex(canonical_url);
    const fs::path probe = dir / "probe.json";
    if (!fs::exists(probe)) return std::nullopt;
    json j;
    try {
        std::ifstream in(probe);
        in >> j;
    } catch (...) {
        return std::nullopt;
    }
    const fs::path video = dir / j.value("file", "");
    if (!fs::exists(video)) return std::nullopt;
    if (fs::file_size(video) != j.value("content_length", uint64_t{0})) return std::nullopt;

    model::VideoAsset asset;
    asset.url = canonical_url;
    asset.local_path = video.string();
    asset.duration_s = j.value("duration_s", 0.0);
    asset.width = j.value("width", 0);
    asset.height = j.value("height", 0);
    asset.probe_ok = true;
    return asset;
}

namespace {

void write_probe_json(const model::VideoAsset& asset, const fs::path& dir) {
    json j{
        {"url", asset.url},
        {"file", fs::path(asset.local_path).filename().string()},
        {"duration_s", asset.duration_s},
        {"width", asset.width},
        {"height", asset.height},
        {"content_length", static_cast<uint64_t>(fs::file_size(asset.local_path))},
        {"probe_ok", asset.probe_ok},
    };
    std::ofstream out(dir / "probe.json");
    out << j.dump(2) << '\n';
}

} // namespace

CandidateSet retrieve(const std::vector<std::string>& queries, int n,
                      backends::SearchBackend& search, backends::VideoFetcher& fetcher,
                      const fs::path& cache_dir, const RetrieveOptions& options) {
    if (queries.empty()) throw Error(ErrorKind::InvalidArgument, "no queries");
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "N must be >= 1");

    const int budget = options.fetch_budget >= 0
                           ? options.fetch_budget
                           : static_cast<int>(queries.size()) * n + 4;
    int fetches = 0;

    CandidateSet set;
    std::set<std::string> merged_urls;
    std::set<std::string> dropped_urls;
    bool budget_exhausted = false;

    for (const auto& query : queries) {
        backends::SearchResult result = search.search(query);
        auto& survivors = set.per_query.emplace_back(query, std::vector<std::string>{}).second;
        std::set<std::string> seen_this_query;

        for (const auto& raw_url : result.urls) {
            if (static_cast<int>(survivors.size()) >= n) break;
            if (budget_exhausted) break;

            std::string canon;
            try {
                canon = canonicalize(raw_url);
            } catch (const Error&) {
                if (dropped_urls.insert(raw_url).second) {
                    set.dropped.emplace_back(raw_url, "unparseable_url");
                }
                continue;
            }
            if (!seen_this_query.insert(canon).second) continue;  // same-query repeat
            if (dropped_urls.count(canon)) continue;              // known-dead URL
            if (merged_urls.count(canon)) {
                // cross-query duplicate: earliest occurrence already merged,
                // still consumes one of this query's N slots
                survivors.push_back(canon);
                continue;
            }

            if (auto cached = cache_lookup(canon, cache_dir)) {
                merged_urls.insert(canon);
                set.merged.push_back(*cached);
                survivors.push_back(canon);
                continue;
            }

            if (fetches >= budget) {
                budget_exhausted = true;
                break;
            }
            ++fetches;
            const fs::path dest = cache_dir / "videos" / sha256_hex(canon);
            try {
                model::VideoAsset asset = fetcher.fetch(canon, dest);
                write_probe_json(asset, dest);
                merged_urls.insert(canon);
                set.merged.push_back(std::move(asset));
                survivors.push_back(canon);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::Unreachable || e.kind() == ErrorKind::Truncated) {
                    dropped_urls.insert(canon);
                    set.dropped.emplace_back(canon, to_string(e.kind()));
                } else {
                    throw;
                }
            }
        }
    }

    if (set.merged.empty()) {
        throw Error(ErrorKind::AllCandidatesFailed, "no accessible complete candidate videos");
    }
    return set;
}

} // namespace shotscout::retriever

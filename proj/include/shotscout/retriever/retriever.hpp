#pragma once
// Stage 2: run queries against the search backend, keep the first N
// accessible-and-complete URLs per query, deduplicate across queries and
// download (or reuse the cache).

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shotscout/backends/interfaces.hpp"
#include "shotscout/model/types.hpp"

namespace shotscout::retriever {

struct CandidateSet {
    // survivors per query in query order; entries are canonical URLs
    std::vector<std::pair<std::string, std::vector<std::string>>> per_query;
    // downloaded assets, earliest occurrence first (query order, then rank)
    std::vector<model::VideoAsset> merged;
    // (canonical URL, reason) for candidates that failed the accessibility or
    // completeness probe
    std::vector<std::pair<std::string, std::string>> dropped;
};

// Stable canonical URL used as dedup and cache key: lowercased scheme/host,
// default ports and tracking parameters stripped, YouTube URL variants
// (youtu.be, /shorts/, /embed/, m.youtube.com) normalized to
// https://www.youtube.com/watch?v=<id>. Idempotent.
// Throws Error(UnparseableUrl).
std::string canonicalize(const std::string& url);

struct RetrieveOptions {
    // Hard cap on downloader invocations per call; <0 means |queries|*N + 4.
    int fetch_budget = -1;
};

// Walks each query's results in rank order, probing accessibility, stopping
// at N survivors per query. Survivors are downloaded into
// <cache_dir>/videos/<sha256(url)>/ or served from a warm cache with zero
// fetch calls. Throws Error(AllCandidatesFailed) when nothing survives.
CandidateSet retrieve(const std::vector<std::string>& queries, int n,
                      backends::SearchBackend& search, backends::VideoFetcher& fetcher,
                      const std::filesystem::path& cache_dir, const RetrieveOptions& options = {});

// Returns the cached asset iff a complete prior download exists whose size
// matches the recorded content length.
std::optional<model::VideoAsset> cache_lookup(const std::string& canonical_url,
                                              const std::filesystem::path& cache_dir);

} // namespace shotscout::retriever

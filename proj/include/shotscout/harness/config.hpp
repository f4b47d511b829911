#pragma once
// Pipeline configuration: the single JSON document steering a run.

#include <string>
#include <vector>

#include <json.hpp>

#include "shotscout/backends/downloader.hpp"
#include "shotscout/localizer/localizer.hpp"
#include "shotscout/sampler/sampler.hpp"

namespace shotscout::harness {

struct ModelsConfig {
    std::string generator = "gemini-2.5-pro";
    std::string localizer = "gemini-2.5-pro";
    std::string judge = "gemini-2.5-pro";
    std::string embedding = "clip-vit-large";

    bool operator==(const ModelsConfig&) const = default;
};

struct RetriesConfig {
    int format_reasks = 2;        // R: bounded re-asks on malformed model output
    int transport_attempts = 3;   // network retry budget
    int transport_backoff_ms = 1000;

    bool operator==(const RetriesConfig&) const = default;
};

struct PipelineConfig {
    int queries_per_sample = 2;  // M
    int urls_per_query = 2;      // N
    sampler::SamplingPolicy policy = sampler::SamplingPolicy::closed_source_default();
    localizer::ParseMode parse_mode = localizer::ParseMode::Strict;
    ModelsConfig models;
    double clip_eval_threshold = 0.7;
    bool clip_text_image = false;  // text-image baseline instead of image-image
    RetriesConfig retries;
    int overflow_halvings = 2;
    uint64_t seed = 0;
    int workers = 4;
    std::string language = "en";
    std::string platform_suffix = "youtube";
    bool audio_for_audio_queries = true;
    std::string cache_dir = "cache";  // relative to the workdir

    // live-mode endpoints; empty means offline-only
    std::string chat_endpoint;
    std::string chat_api_key;
    std::string search_endpoint;
    std::string embedding_endpoint;
    std::vector<std::string> downloader_command = backends::default_downloader_command();
    int per_host_downloads = 2;

    void check() const;  // throws Error(InvalidArgument)
    std::string fingerprint() const;

    bool operator==(const PipelineConfig&) const = default;
};

void to_json(nlohmann::json& j, const PipelineConfig& c);
void from_json(const nlohmann::json& j, PipelineConfig& c);

PipelineConfig load_config(const std::filesystem::path& path);

} // namespace shotscout::harness

#include "shotscout/harness/config.hpp"

#include <fstream>

#include "shotscout/common/hash.hpp"
#include "shotscout/errors.hpp"

namespace shotscout::harness {

using nlohmann::json;

void PipelineConfig::check() const {
    if (queries_per_sample < 1) throw Error(ErrorKind::InvalidArgument, "M must be >= 1");
    if (urls_per_query < 1) throw Error(ErrorKind::InvalidArgument, "N must be >= 1");
    if (workers < 1) throw Error(ErrorKind::InvalidArgument, "workers must be >= 1");
    if (clip_eval_threshold < -1.0 || clip_eval_threshold > 1.0) {
        throw Error(ErrorKind::InvalidArgument, "clip threshold must be in [-1, 1]");
    }
    policy.check();
}

void to_json(json& j, const PipelineConfig& c) {
    j = json{
        {"queries_per_sample", c.queries_per_sample},
        {"urls_per_query", c.urls_per_query},
        {"sampling", c.policy},
        {"parse_mode", localizer::to_string(c.parse_mode)},
        {"models",
         json{{"generator", c.models.generator},
              {"localizer", c.models.localizer},
              {"judge", c.models.judge},
              {"embedding", c.models.embedding}}},
        {"thresholds", json{{"clip_eval", c.clip_eval_threshold}}},
        {"clip_text_image", c.clip_text_image},
        {"retries",
         json{{"format_reasks", c.retries.format_reasks},
              {"transport_attempts", c.retries.transport_attempts},
              {"transport_backoff_ms", c.retries.transport_backoff_ms}}},
        {"overflow_halvings", c.overflow_halvings},
        {"seed", c.seed},
        {"workers", c.workers},
        {"language", c.language},
        {"platform_suffix", c.platform_suffix},
        {"audio_for_audio_queries", c.audio_for_audio_queries},
        {"cache_dir", c.cache_dir},
        {"chat_endpoint", c.chat_endpoint},
        {"chat_api_key", c.chat_api_key},
        {"search_endpoint", c.search_endpoint},
        {"embedding_endpoint", c.embedding_endpoint},
        {"downloader_command", c.downloader_command},
        {"per_host_downloads", c.per_host_downloads},
    };
}

void from_json(const json& j, PipelineConfig& c) {
    c = PipelineConfig{};
    if (j.contains("queries_per_sample")) j.at("queries_per_sample").get_to(c.queries_per_sample);
    if (j.contains("urls_per_query")) j.at("urls_per_query").get_to(c.urls_per_query);
    if (j.contains("sampling")) j.at("sampling").get_to(c.policy);
    if (j.contains("parse_mode")) {
        c.parse_mode = localizer::parse_mode_from_string(j.at("parse_mode").get<std::string>());
    }
    if (j.contains("models")) {
        const json& m = j.at("models");
        if (m.contains("generator")) m.at("generator").get_to(c.models.generator);
        if (m.contains("localizer")) m.at("localizer").get_to(c.models.localizer);
        if (m.contains("judge")) m.at("judge").get_to(c.models.judge);
        if (m.contains("embedding")) m.at("embedding").get_to(c.models.embedding);
    }
    if (j.contains("thresholds") && j.at("thresholds").contains("clip_eval")) {
        j.at("thresholds").at("clip_eval").get_to(c.clip_eval_threshold);
    }
    if (j.contains("clip_text_image")) j.at("clip_text_image").get_to(c.clip_text_image);
    if (j.contains("retries")) {
        const json& r = j.at("retries");
        if (r.contains("format_reasks")) r.at("format_reasks").get_to(c.retries.format_reasks);
        if (r.contains("transport_attempts")) {
            r.at("transport_attempts").get_to(c.retries.transport_attempts);
        }
        if (r.contains("transport_backoff_ms")) {
            r.at("transport_backoff_ms").get_to(c.retries.transport_backoff_ms);
        }
    }
    if (j.contains("overflow_halvings")) j.at("overflow_halvings").get_to(c.overflow_halvings);
    if (j.contains("seed")) j.at("seed").get_to(c.seed);
    if (j.contains("workers")) j.at("workers").get_to(c.workers);
    if (j.contains("language")) j.at("language").get_to(c.language);
    if (j.contains("platform_suffix")) j.at("platform_suffix").get_to(c.platform_suffix);
    if (j.contains("audio_for_audio_queries")) {
        j.at("audio_for_audio_queries").get_to(c.audio_for_audio_queries);
    }
    if (j.contains("cache_dir")) j.at("cache_dir").get_to(c.cache_dir);
    if (j.contains("chat_endpoint")) j.at("chat_endpoint").get_to(c.chat_endpoint);
    if (j.contains("chat_api_key")) j.at("chat_api_key").get_to(c.chat_api_key);
    if (j.contains("search_endpoint")) j.at("search_endpoint").get_to(c.search_endpoint);
    if (j.contains("embedding_endpoint")) j.at("embedding_endpoint").get_to(c.embedding_endpoint);
    if (j.contains("downloader_command")) {
        j.at("downloader_command").get_to(c.downloader_command);
    }
    if (j.contains("per_host_downloads")) j.at("per_host_downloads").get_to(c.per_host_downloads);
    c.check();
}

std::string PipelineConfig::fingerprint() const {
    json j = *this;
    j.erase("workers");  // parallelism does not change results
    return sha256_hex(j.dump());
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot read config: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedJson, std::string("config: ") + e.what());
    }
    return j.get<PipelineConfig>();
}

} // namespace shotscout::harness

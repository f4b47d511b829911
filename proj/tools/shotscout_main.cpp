// shotscout CLI: pipeline stages as subcommands plus the benchmark toolkit.
//
// Exit codes: 0 success, 1 pipeline failure, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "shotscout/backends/downloader.hpp"
#include "shotscout/backends/http.hpp"
#include "shotscout/backends/journal.hpp"
#include "shotscout/backends/media.hpp"
#include "shotscout/backends/mocks.hpp"
#include "shotscout/backends/retry.hpp"
#include "shotscout/benchkit/bundle.hpp"
#include "shotscout/benchkit/filters.hpp"
#include "shotscout/benchkit/quota.hpp"
#include "shotscout/benchkit/validate.hpp"
#include "shotscout/common/hash.hpp"
#include "shotscout/common/strings.hpp"
#include "shotscout/generator/generator.hpp"
#include "shotscout/harness/ablate.hpp"
#include "shotscout/harness/pipeline.hpp"
#include "shotscout/judge/judge.hpp"
#include "shotscout/localizer/localizer.hpp"
#include "shotscout/model/serde.hpp"
#include "shotscout/retriever/retriever.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace shotscout;

namespace {

// Placeholder backends that fail loudly when a live endpoint is not
// configured and no replay journal was given.
class UnconfiguredChat : public backends::ChatBackend {
public:
    std::string chat(const backends::ChatRequest&) override {
        throw Error(ErrorKind::InvalidArgument,
                    "no chat endpoint configured; set chat_endpoint or use --replay");
    }
};

class UnconfiguredSearch : public backends::SearchBackend {
public:
    backends::SearchResult search(const std::string&) override {
        throw Error(ErrorKind::InvalidArgument,
                    "no search endpoint configured; set search_endpoint or use --replay");
    }
};

struct Cli {
    fs::path workdir = ".";
    std::string config_path;
    std::string replay_dir;
    std::string record_dir;
    int64_t seed = -1;

    harness::PipelineConfig config;
    std::shared_ptr<backends::CallCounters> counters =
        std::make_shared<backends::CallCounters>();

    void load() {
        if (!config_path.empty()) config = harness::load_config(config_path);
        if (seed >= 0) config.seed = static_cast<uint64_t>(seed);
        config.check();
    }

    backends::Backends assemble() {
        auto extractor = std::make_shared<backends::SubprocessExtractor>();
        if (!replay_dir.empty()) {
            auto journal = std::make_shared<backends::Journal>(replay_dir);
            return backends::make_replay_backends(journal, extractor, counters,
                                                  config.platform_suffix);
        }

        backends::Backends live;
        live.extractor = extractor;
        if (!config.chat_endpoint.empty()) {
            backends::HttpChatOptions options;
            options.base_url = config.chat_endpoint;
            options.api_key = config.chat_api_key;
            backends::RetryPolicy policy;
            policy.attempts = config.retries.transport_attempts;
            policy.base_delay = std::chrono::milliseconds(config.retries.transport_backoff_ms);
            live.chat = std::make_shared<backends::RetryingChat>(
                std::make_shared<backends::HttpChatBackend>(options), policy);
        } else {
            live.chat = std::make_shared<UnconfiguredChat>();
        }
        if (!config.search_endpoint.empty()) {
            backends::HttpSearchOptions options;
            options.base_url = config.search_endpoint;
            options.platform_suffix = config.platform_suffix;
            live.search = std::make_shared<backends::HttpSearchBackend>(options);
        } else {
            live.search = std::make_shared<UnconfiguredSearch>();
        }
        if (!config.embedding_endpoint.empty()) {
            backends::HttpEmbeddingOptions options;
            options.base_url = config.embedding_endpoint;
            live.embed = std::make_shared<backends::HttpEmbeddingBackend>(options);
        } else {
            // offline stand-in: stable content-hash embeddings
            live.embed = std::make_shared<backends::HashEmbedding>();
        }
        live.fetcher = std::make_shared<backends::CommandFetcher>(
            config.downloader_command, extractor, config.per_host_downloads);

        if (!record_dir.empty()) {
            auto journal = std::make_shared<backends::Journal>(record_dir);
            return backends::make_recording_backends(live, journal, counters,
                                                     config.platform_suffix);
        }
        return live;
    }

    model::ShotQuery make_query(const std::string& description, const std::string& kind,
                                const std::string& constraint_text) const {
        model::ShotQuery query;
        query.description = description;
        query.language = config.language;
        query.constraint_kind = model::constraint_kind_from_string(kind);
        if (!constraint_text.empty()) query.constraint_text = constraint_text;
        return query;
    }
};

void print_json(const json& j) { std::cout << j.dump(2) << std::endl; }

model::VideoAsset probe_local(const fs::path& video, backends::MediaExtractor& extractor) {
    backends::ProbeInfo info = extractor.probe(video);
    model::VideoAsset asset;
    asset.local_path = fs::absolute(video).string();
    asset.duration_s = info.duration_s;
    asset.width = info.width;
    asset.height = info.height;
    asset.probe_ok = info.duration_s > 0;
    return asset;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"open-domain video shot retrieval pipeline"};
    app.require_subcommand(1);

    Cli cli;
    app.add_option("--workdir", cli.workdir, "root for cache/ and runs/");
    app.add_option("--config", cli.config_path, "pipeline config JSON");
    app.add_option("--replay", cli.replay_dir, "replay journal directory (offline)");
    app.add_option("--record", cli.record_dir, "record live calls into this journal");
    app.add_option("--seed", cli.seed, "RNG seed override");

    // ---- expand ----
    auto* cmd_expand = app.add_subcommand("expand", "expand a description into search queries");
    std::string description, constraint_kind = "shot", constraint_text;
    int m_override = -1;
    cmd_expand->add_option("--description", description)->required();
    cmd_expand->add_option("--constraint", constraint_kind, "shot|temporal|color|style|audio|resolution");
    cmd_expand->add_option("--constraint-text", constraint_text);
    cmd_expand->add_option("--m", m_override, "queries to request (default from config)");

    // ---- search ----
    auto* cmd_search = app.add_subcommand("search", "run one search query");
    std::string search_query;
    cmd_search->add_option("--query", search_query)->required();

    // ---- fetch ----
    auto* cmd_fetch = app.add_subcommand("fetch", "download one video into the cache");
    std::string fetch_url;
    cmd_fetch->add_option("--url", fetch_url)->required();

    // ---- sample ----
    auto* cmd_sample = app.add_subcommand("sample", "sample a frame grid from a local video");
    std::string sample_video, sampling_notation;
    bool with_audio = false;
    cmd_sample->add_option("--video", sample_video)->required();
    cmd_sample->add_option("--sampling", sampling_notation, "X-Y-Z or flat-N");
    cmd_sample->add_flag("--with-audio", with_audio);

    // ---- localize ----
    auto* cmd_localize = app.add_subcommand("localize", "ground a description in a local video");
    std::string loc_video, loc_mode;
    cmd_localize->add_option("--description", description)->required();
    cmd_localize->add_option("--constraint", constraint_kind);
    cmd_localize->add_option("--constraint-text", constraint_text);
    cmd_localize->add_option("--video", loc_video)->required();
    cmd_localize->add_option("--sampling", sampling_notation);
    cmd_localize->add_option("--mode", loc_mode, "strict|permissive");
    cmd_localize->add_flag("--with-audio", with_audio);

    // ---- judge ----
    auto* cmd_judge = app.add_subcommand("judge", "verify a selected frame against ground truth");
    std::string gt_frame, selected_frame;
    bool use_clip = false;
    cmd_judge->add_option("--description", description)->required();
    cmd_judge->add_option("--constraint", constraint_kind);
    cmd_judge->add_option("--constraint-text", constraint_text);
    cmd_judge->add_option("--gt", gt_frame)->required();
    cmd_judge->add_option("--selected", selected_frame)->required();
    cmd_judge->add_flag("--clip", use_clip, "embedding-similarity baseline instead of the LLM judge");

    // ---- run ----
    auto* cmd_run = app.add_subcommand("run", "run the benchmark end to end");
    std::string samples_dir, run_id = "default";
    cmd_run->add_option("--samples", samples_dir)->required();
    cmd_run->add_option("--run-id", run_id);

    // ---- score ----
    auto* cmd_score = app.add_subcommand("score", "re-score the traces of a finished run");
    std::string run_dir;
    cmd_score->add_option("--run", run_dir, "runs/<id> directory")->required();

    // ---- ablate ----
    auto* cmd_ablate = app.add_subcommand("ablate", "run an ablation grid");
    std::string grid_mxn, grid_sampling, preset;
    cmd_ablate->add_option("--samples", samples_dir)->required();
    cmd_ablate->add_option("--grid", grid_mxn, "comma-separated MxN list, e.g. 1x2,2x2,3x2");
    cmd_ablate->add_option("--sampling-grid", grid_sampling, "comma-separated X-Y-Z list");
    cmd_ablate->add_option("--preset", preset, "queries|urls|sampling");

    // ---- bench ----
    auto* cmd_bench = app.add_subcommand("bench", "benchmark construction toolkit");
    cmd_bench->require_subcommand(1);

    auto* cmd_quotas = cmd_bench->add_subcommand("quotas", "print topic quota plans");
    std::string quota_task;
    cmd_quotas->add_option("--task", quota_task, "one task (default: all six)");

    auto* cmd_validate = cmd_bench->add_subcommand("validate", "validate benchmark records");
    std::vector<std::string> validate_files;
    cmd_validate->add_option("files", validate_files, "record JSON files")->required();

    auto* cmd_build = cmd_bench->add_subcommand("build", "extract + filter a candidate bundle");
    std::string build_video, build_category, build_kind = "shot";
    double build_timestamp = -1.0;
    int build_attempts = 10;
    std::string build_out = "bundles";
    cmd_build->add_option("--video", build_video)->required();
    cmd_build->add_option("--category", build_category)->required();
    cmd_build->add_option("--kind", build_kind);
    cmd_build->add_option("--timestamp", build_timestamp, "target time (default: seeded random)");
    cmd_build->add_option("--attempts", build_attempts, "diversity-gate resample attempts");
    cmd_build->add_option("--out", build_out, "output dir under the workdir");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        cli.load();
        backends::Backends bk = cli.assemble();
        const fs::path workdir = fs::absolute(cli.workdir);
        fs::create_directories(workdir);
        const fs::path cache_dir = workdir / cli.config.cache_dir;

        if (*cmd_expand) {
            const int m = m_override > 0 ? m_override : cli.config.queries_per_sample;
            auto query = cli.make_query(description, constraint_kind, constraint_text);
            auto result = generator::expand(query, m, *bk.chat, cli.config.models.generator,
                                            {cli.config.retries.format_reasks});
            print_json(json{{"think", result.think}, {"queries", result.queries}});
        } else if (*cmd_search) {
            auto result = bk.search->search(search_query);
            print_json(json{{"query", result.query}, {"urls", result.urls}});
        } else if (*cmd_fetch) {
            const std::string canon = retriever::canonicalize(fetch_url);
            auto cached = retriever::cache_lookup(canon, cache_dir);
            model::VideoAsset asset;
            if (cached) {
                asset = *cached;
            } else {
                asset = bk.fetcher->fetch(canon, cache_dir / "videos" / sha256_hex(canon));
            }
            print_json(json(asset));
        } else if (*cmd_sample) {
            auto policy = sampling_notation.empty()
                              ? cli.config.policy
                              : sampler::SamplingPolicy::from_notation(sampling_notation);
            auto asset = probe_local(sample_video, *bk.extractor);
            auto grid = sampler::sample(asset, policy, with_audio, *bk.extractor, cache_dir);
            print_json(json(grid));
        } else if (*cmd_localize) {
            auto policy = sampling_notation.empty()
                              ? cli.config.policy
                              : sampler::SamplingPolicy::from_notation(sampling_notation);
            auto query = cli.make_query(description, constraint_kind, constraint_text);
            auto asset = probe_local(loc_video, *bk.extractor);
            localizer::LocalizeOptions options;
            options.mode = loc_mode.empty() ? cli.config.parse_mode
                                            : localizer::parse_mode_from_string(loc_mode);
            options.format_reasks = cli.config.retries.format_reasks;
            options.overflow_halvings = cli.config.overflow_halvings;
            auto outcome =
                localizer::localize(query, asset, policy, with_audio, *bk.chat, *bk.extractor,
                                    cli.config.models.localizer, cache_dir, options);
            print_json(json(outcome));
        } else if (*cmd_judge) {
            auto query = cli.make_query(description, constraint_kind, constraint_text);
            if (use_clip) {
                bool matched = cli.config.clip_text_image
                                   ? judge::clip_verdict_text(
                                         query.full_text(), selected_frame, *bk.embed,
                                         cli.config.models.embedding,
                                         cli.config.clip_eval_threshold)
                                   : judge::clip_verdict(gt_frame, selected_frame, *bk.embed,
                                                         cli.config.models.embedding,
                                                         cli.config.clip_eval_threshold);
                print_json(json{{"matched", matched},
                                {"method", "clip"},
                                {"threshold", cli.config.clip_eval_threshold}});
            } else {
                auto verdict = judge::verify(query, gt_frame, selected_frame, *bk.chat,
                                             cli.config.models.judge,
                                             {cli.config.retries.format_reasks});
                print_json(json(verdict));
            }
        } else if (*cmd_run) {
            auto samples = harness::load_samples(samples_dir);
            auto output = harness::run_benchmark(samples, cli.config, bk, workdir, run_id);
            std::cerr << "backend calls: live=" << cli.counters->live
                      << " replayed=" << cli.counters->replayed << "\n";
            print_json(output.report.to_json());
        } else if (*cmd_score) {
            std::vector<model::RunRecord> records;
            std::map<std::string, model::ConstraintKind> tasks;
            for (const auto& entry :
                 fs::recursive_directory_iterator(fs::path(run_dir) / "samples")) {
                if (entry.path().filename() != "trace.json") continue;
                std::ifstream in(entry.path());
                json j;
                in >> j;
                model::RunRecord record = j.get<model::RunRecord>();
                tasks[record.sample_id] = model::constraint_kind_from_string(record.task);
                records.push_back(std::move(record));
            }
            print_json(harness::score(records, tasks).to_json());
        } else if (*cmd_ablate) {
            auto samples = harness::load_samples(samples_dir);
            std::vector<harness::AblationSpec> grid;
            if (!preset.empty()) grid = harness::preset_grid(cli.config, preset);
            for (const auto& notation : split(grid_mxn, ',')) {
                if (!notation.empty()) grid.push_back(harness::spec_from_mxn(cli.config, notation));
            }
            for (const auto& notation : split(grid_sampling, ',')) {
                if (!notation.empty()) {
                    grid.push_back(harness::spec_from_sampling(cli.config, notation));
                }
            }
            if (grid.empty()) {
                throw Error(ErrorKind::InvalidArgument,
                            "empty ablation grid: pass --grid, --sampling-grid or --preset");
            }
            auto reports = harness::ablate(grid, samples, bk, workdir);
            json out = json::array();
            for (size_t i = 0; i < grid.size(); ++i) {
                out.push_back(json{{"label", grid[i].label},
                                   {"report", reports[i].to_json()}});
            }
            print_json(out);
        } else if (*cmd_quotas) {
            json out = json::array();
            if (!quota_task.empty()) {
                out.push_back(json(benchkit::plan_quotas(
                    model::constraint_kind_from_string(quota_task))));
            } else {
                int grand_total = 0;
                for (auto kind : model::all_constraint_kinds()) {
                    auto plan = benchkit::plan_quotas(kind);
                    grand_total += plan.total();
                    out.push_back(json(plan));
                }
                print_json(json{{"plans", out}, {"grand_total", grand_total}});
                return 0;
            }
            print_json(out);
        } else if (*cmd_validate) {
            bool any_failed = false;
            json out = json::array();
            for (const auto& file : validate_files) {
                std::ifstream in(file);
                if (!in) throw Error(ErrorKind::IoError, "cannot read " + file);
                json record;
                try {
                    in >> record;
                } catch (const json::exception& e) {
                    out.push_back(json{{"file", file},
                                       {"passed", false},
                                       {"violations",
                                        json::array({json{{"field", "<json>"},
                                                          {"level", "fail"},
                                                          {"message", e.what()}}})}});
                    any_failed = true;
                    continue;
                }
                auto report = benchkit::validate_record(record);
                json entry = report.to_json();
                entry["file"] = file;
                out.push_back(entry);
                if (!report.passed()) any_failed = true;
            }
            print_json(out);
            return any_failed ? 1 : 0;
        } else if (*cmd_build) {
            auto asset = probe_local(build_video, *bk.extractor);
            if (!model::is_known_topic(build_category)) {
                throw Error(ErrorKind::InvalidArgument,
                            "category not in the topic vocabulary: " + build_category);
            }
            const auto kind = model::constraint_kind_from_string(build_kind);
            const fs::path out_dir = workdir / build_out / fs::path(build_video).stem();

            benchkit::BundleBuild build;
            if (build_timestamp >= 0) {
                build.attempts = 1;
                build.bundle =
                    benchkit::extract_bundle(asset, build_timestamp, *bk.extractor, out_dir);
                build.accepted = benchkit::diversity_gate(build.bundle, *bk.embed,
                                                          cli.config.models.embedding) ==
                                 benchkit::GateDecision::Accept;
            } else {
                std::mt19937_64 rng(cli.config.seed);
                build = benchkit::build_diverse_bundle(asset, *bk.extractor, *bk.embed,
                                                       cli.config.models.embedding, out_dir, rng,
                                                       build_attempts);
            }

            json filters = json::object();
            if (build.accepted) {
                if (kind == model::ConstraintKind::Color || kind == model::ConstraintKind::Style) {
                    auto consensus = benchkit::consensus_classify(
                        build.bundle.target_frame,
                        kind == model::ConstraintKind::Color ? benchkit::FilterKind::Color
                                                             : benchkit::FilterKind::Style,
                        *bk.chat, cli.config.models.generator, *bk.chat,
                        cli.config.models.judge);
                    filters["consensus"] =
                        json{{"label", consensus.label ? json(*consensus.label) : json(nullptr)},
                             {"rounds", consensus.rounds}};
                } else if (kind == model::ConstraintKind::Audio) {
                    auto label = benchkit::classify_audio(build.bundle.audio, *bk.chat,
                                                          cli.config.models.generator);
                    filters["audio"] = label ? json(*label) : json(nullptr);
                }
            }

            print_json(json{{"accepted", build.accepted},
                            {"attempts", build.attempts},
                            {"category", build_category},
                            {"task", model::to_string(kind)},
                            {"target_timestamp_s", build.bundle.target_timestamp_s},
                            {"assets",
                             json{{"target_frame", build.bundle.target_frame},
                                  {"preceding_frames", build.bundle.preceding},
                                  {"following_frames", build.bundle.following},
                                  {"audio_clip", build.bundle.audio},
                                  {"metadata", build.bundle.meta}}},
                            {"filters", filters}});
            return build.accepted ? 0 : 1;
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "shotscout: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "shotscout: unexpected: " << e.what() << "\n";
        return 1;
    }
}

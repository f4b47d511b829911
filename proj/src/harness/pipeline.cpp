#include "shotscout/harness/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

#include "shotscout/common/strings.hpp"
#include "shotscout/generator/generator.hpp"
#include "shotscout/judge/judge.hpp"
#include "shotscout/localizer/localizer.hpp"
#include "shotscout/model/serde.hpp"
#include "shotscout/retriever/retriever.hpp"

namespace shotscout::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string relativize(const std::string& path, const fs::path& base) {
    const std::string prefix = base.string() + "/";
    if (starts_with(path, prefix)) return path.substr(prefix.size());
    return path;
}

void relativize_record(model::RunRecord& record, const fs::path& workdir) {
    for (auto& asset : record.candidates) asset.local_path = relativize(asset.local_path, workdir);
    for (auto& outcome : record.outcomes) {
        outcome.candidate.local_path = relativize(outcome.candidate.local_path, workdir);
        outcome.chosen_frame_path = relativize(outcome.chosen_frame_path, workdir);
    }
}

} // namespace

model::RunRecord run_sample(const TaskedSample& tasked, const PipelineConfig& config,
                            const backends::Backends& backends, const fs::path& workdir) {
    model::RunRecord record;
    record.sample_id = tasked.sample.id;
    record.task = model::to_string(tasked.kind);
    record.config_fingerprint = config.fingerprint();
    const fs::path cache_dir = workdir / config.cache_dir;

    const fs::path gt_frame = tasked.base_dir / tasked.sample.asset_paths.target_frame;
    if (tasked.sample.asset_paths.target_frame.empty() || !fs::exists(gt_frame)) {
        record.error = "missing ground-truth frame: " + gt_frame.string();
        return record;
    }

    model::ShotQuery query;
    generator::ExpansionResult expansion;
    auto t0 = std::chrono::steady_clock::now();
    try {
        query = model::query_from_sample(tasked.sample, tasked.kind, config.language);
        expansion = generator::expand(query, config.queries_per_sample, *backends.chat,
                                      config.models.generator,
                                      {config.retries.format_reasks});
        record.queries = expansion.queries;
    } catch (const Error& e) {
        record.error = std::string("generator: ") + e.what();
        record.stage_timings_ms["expand"] = ms_since(t0);
        return record;
    }
    record.stage_timings_ms["expand"] = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    retriever::CandidateSet candidates;
    try {
        candidates = retriever::retrieve(expansion.queries, config.urls_per_query,
                                         *backends.search, *backends.fetcher, cache_dir);
    } catch (const Error& e) {
        record.error = std::string("retriever: ") + e.what();
        record.stage_timings_ms["retrieve"] = ms_since(t0);
        relativize_record(record, workdir);
        return record;
    }
    record.candidates = candidates.merged;
    record.dropped = candidates.dropped;
    record.stage_timings_ms["retrieve"] = ms_since(t0);

    const bool with_audio =
        config.audio_for_audio_queries && tasked.kind == model::ConstraintKind::Audio;
    localizer::LocalizeOptions localize_options;
    localize_options.mode = config.parse_mode;
    localize_options.format_reasks = config.retries.format_reasks;
    localize_options.overflow_halvings = config.overflow_halvings;

    double localize_ms = 0.0;
    double verify_ms = 0.0;
    for (const auto& candidate : candidates.merged) {
        t0 = std::chrono::steady_clock::now();
        model::LocalizationOutcome outcome =
            localizer::localize(query, candidate, config.policy, with_audio, *backends.chat,
                                *backends.extractor, config.models.localizer, cache_dir,
                                localize_options);
        localize_ms += ms_since(t0);

        const bool has_frame = outcome.frame_index.has_value();
        const std::string frame_path = outcome.chosen_frame_path;
        record.outcomes.push_back(std::move(outcome));

        if (!has_frame) continue;

        t0 = std::chrono::steady_clock::now();
        try {
            model::Verdict verdict =
                judge::verify(query, gt_frame.string(), frame_path, *backends.chat,
                              config.models.judge, {config.retries.format_reasks});
            verify_ms += ms_since(t0);
            record.verdicts.push_back(verdict);
            if (verdict.matched) {
                record.final.success = true;
                record.final.winning_url = record.outcomes.back().candidate.url;
                record.final.winning_frame = record.outcomes.back().frame_index;
                record.final.winning_timestamp_s = record.outcomes.back().chosen_timestamp_s;
                break;  // first verified candidate wins
            }
        } catch (const Error& e) {
            verify_ms += ms_since(t0);
            auto& note = record.outcomes.back().note;
            if (!note.empty()) note += "; ";
            note += std::string("judge failed: ") + e.what();
        }
    }
    record.stage_timings_ms["localize"] = localize_ms;
    record.stage_timings_ms["verify"] = verify_ms;

    relativize_record(record, workdir);
    model::check_run_record(record);
    return record;
}

RunOutput run_benchmark(const std::vector<TaskedSample>& samples, const PipelineConfig& config,
                        const backends::Backends& backends, const fs::path& workdir,
                        const std::string& run_id) {
    config.check();
    const fs::path run_dir = workdir / "runs" / run_id;
    fs::create_directories(run_dir / "samples");

    std::vector<model::RunRecord> records(samples.size());
    std::atomic<size_t> next{0};
    const int workers = std::min<int>(config.workers, static_cast<int>(samples.size()));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(std::max(workers, 1)));
    for (int w = 0; w < std::max(workers, 1); ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= samples.size()) return;
                records[i] = run_sample(samples[i], config, backends, workdir);
            }
        });
    }
    for (auto& t : pool) t.join();

    std::map<std::string, model::ConstraintKind> tasks;
    for (const auto& tasked : samples) tasks[tasked.sample.id] = tasked.kind;

    for (const auto& record : records) {
        const fs::path dir = run_dir / "samples" / record.sample_id;
        fs::create_directories(dir);
        std::ofstream out(dir / "trace.json");
        out << json(record).dump(2) << '\n';
    }

    RunOutput output;
    output.records = records;
    output.report = score(records, tasks);
    for (auto& [id, task, success, trace] : output.report.per_sample) {
        trace = "runs/" + run_id + "/samples/" + id + "/trace.json";
    }
    output.report_path = run_dir / "report.json";
    {
        std::ofstream out(output.report_path);
        out << output.report.to_json().dump(2) << '\n';
    }
    return output;
}

std::vector<TaskedSample> load_samples(const fs::path& samples_dir) {
    std::vector<TaskedSample> samples;
    const fs::path manifest = samples_dir / "manifest.json";
    if (fs::exists(manifest)) {
        std::ifstream in(manifest);
        json j;
        in >> j;
        for (const auto& entry : j) {
            TaskedSample tasked;
            tasked.base_dir = samples_dir;
            tasked.kind =
                model::constraint_kind_from_string(entry.at("task").get<std::string>());
            const fs::path file = samples_dir / entry.at("file").get<std::string>();
            std::ifstream sample_in(file);
            if (!sample_in) throw Error(ErrorKind::IoError, "cannot read " + file.string());
            json record;
            sample_in >> record;
            tasked.sample = model::parse_benchmark_sample(record);
            samples.push_back(std::move(tasked));
        }
        return samples;
    }
    for (const auto& entry : fs::directory_iterator(samples_dir)) {
        if (entry.path().extension() != ".json") continue;
        std::ifstream in(entry.path());
        json record;
        in >> record;
        TaskedSample tasked;
        tasked.base_dir = samples_dir;
        tasked.sample = model::parse_benchmark_sample(record);
        samples.push_back(std::move(tasked));
    }
    std::sort(samples.begin(), samples.end(),
              [](const TaskedSample& a, const TaskedSample& b) {
                  return a.sample.id < b.sample.id;
              });
    return samples;
}

} // namespace shotscout::harness

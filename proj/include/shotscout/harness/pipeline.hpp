#pragma once
// End-to-end orchestration: expand -> retrieve -> localize+verify per
// candidate with first-verified-wins early stopping, plus the run store.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "shotscout/backends/interfaces.hpp"
#include "shotscout/harness/config.hpp"
#include "shotscout/harness/scoring.hpp"
#include "shotscout/model/types.hpp"

namespace shotscout::harness {

struct TaskedSample {
    model::BenchmarkSample sample;
    model::ConstraintKind kind = model::ConstraintKind::Shot;
    std::filesystem::path base_dir;  // asset paths resolve against this
};

// Runs one sample end to end. Stage errors are captured in the record (a
// generator failure or AllCandidatesFailed short-circuits with
// final.success=false); nothing escapes except programming errors.
model::RunRecord run_sample(const TaskedSample& tasked, const PipelineConfig& config,
                            const backends::Backends& backends,
                            const std::filesystem::path& workdir);

struct RunOutput {
    std::vector<model::RunRecord> records;
    Report report;
    std::filesystem::path report_path;
};

// Runs all samples (worker pool, per-sample stages sequential), writes
// runs/<run_id>/samples/<id>/trace.json and runs/<run_id>/report.json under
// the workdir, and returns the scored report. Trace and report bytes are
// deterministic for a fixed replay journal and config (timings excepted).
RunOutput run_benchmark(const std::vector<TaskedSample>& samples, const PipelineConfig& config,
                        const backends::Backends& backends,
                        const std::filesystem::path& workdir, const std::string& run_id);

// Loads samples from a directory: either manifest.json
// ([{"file": ..., "task": ...}]) or, without a manifest, every *.json record
// with the task defaulting to Shot.
std::vector<TaskedSample> load_samples(const std::filesystem::path& samples_dir);

} // namespace shotscout::harness

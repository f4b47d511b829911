#pragma once
// Benchmark scoring: per-task accuracy and the unweighted task average.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "shotscout/model/types.hpp"

namespace shotscout::harness {

struct Report {
    std::map<model::ConstraintKind, double> per_task;  // accuracy percentages
    double average = 0.0;                              // unweighted task mean
    // (sample_id, task, success, trace ref) sorted by sample_id
    std::vector<std::tuple<std::string, std::string, bool, std::string>> per_sample;
    std::string config_fingerprint;

    nlohmann::json to_json() const;
};

// Unweighted mean over the present tasks (absent tasks are excluded, not
// zero-filled). Throws Error(EmptyTask) on an empty map.
double average_of(const std::map<model::ConstraintKind, double>& per_task);

// Per-task accuracy = successes / samples * 100; rounding happens only at
// display time. Throws Error(EmptyTask) when records is empty or a task in
// `tasks` matches no record.
Report score(const std::vector<model::RunRecord>& records,
             const std::map<std::string, model::ConstraintKind>& tasks);

// Display rounding (one decimal), e.g. for table output.
std::string format_pct(double pct);

} // namespace shotscout::harness

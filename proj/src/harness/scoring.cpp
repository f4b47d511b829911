#include "shotscout/harness/scoring.hpp"

#include <cmath>
#include <cstdio>

#include "shotscout/errors.hpp"

namespace shotscout::harness {

using nlohmann::json;

json Report::to_json() const {
    json tasks = json::object();
    for (const auto& [kind, pct] : per_task) tasks[model::to_string(kind)] = pct;
    json samples = json::array();
    for (const auto& [id, task, success, trace] : per_sample) {
        samples.push_back(
            json{{"id", id}, {"task", task}, {"success", success}, {"trace", trace}});
    }
    return json{
        {"per_task", tasks},
        {"average", average},
        {"num_samples", per_sample.size()},
        {"per_sample", samples},
        {"config_fingerprint", config_fingerprint},
    };
}

double average_of(const std::map<model::ConstraintKind, double>& per_task) {
    if (per_task.empty()) throw Error(ErrorKind::EmptyTask, "no task accuracies to average");
    double sum = 0.0;
    for (const auto& [kind, pct] : per_task) sum += pct;
    return sum / static_cast<double>(per_task.size());
}

Report score(const std::vector<model::RunRecord>& records,
             const std::map<std::string, model::ConstraintKind>& tasks) {
    if (records.empty()) throw Error(ErrorKind::EmptyTask, "no records to score");

    std::map<model::ConstraintKind, std::pair<int, int>> counts;  // kind -> (success, total)
    Report report;
    for (const auto& record : records) {
        auto it = tasks.find(record.sample_id);
        if (it == tasks.end()) {
            throw Error(ErrorKind::EmptyTask, "record " + record.sample_id + " has no task tag");
        }
        auto& [successes, total] = counts[it->second];
        ++total;
        if (record.final.success) ++successes;
        report.per_sample.emplace_back(record.sample_id, model::to_string(it->second),
                                       record.final.success, "");
    }
    std::sort(report.per_sample.begin(), report.per_sample.end());

    for (const auto& [kind, pair] : counts) {
        report.per_task[kind] = 100.0 * pair.first / pair.second;
    }
    report.average = average_of(report.per_task);
    if (!records.empty()) report.config_fingerprint = records.front().config_fingerprint;
    return report;
}

std::string format_pct(double pct) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", pct);
    return buf;
}

} // namespace shotscout::harness

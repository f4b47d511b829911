#include "shotscout/benchkit/quota.hpp"

#include "shotscout/errors.hpp"

namespace shotscout::benchkit {

using model::ConstraintKind;
using nlohmann::json;

int QuotaPlan::total() const {
    int sum = 0;
    for (const auto& g : subgroups) sum += g.total;
    return sum;
}

void to_json(json& j, const QuotaPlan& plan) {
    json groups = json::array();
    for (const auto& g : plan.subgroups) {
        groups.push_back(json{{"label", g.label},
                              {"total", g.total},
                              {"topics", g.topics},
                              {"per_topic", g.per_topic}});
    }
    j = json{{"task", model::to_string(plan.task)},
             {"total", plan.total()},
             {"subgroups", groups}};
}

QuotaSubgroup equal_split(std::string label, int total, std::vector<std::string> topics) {
    if (topics.empty()) throw Error(ErrorKind::InvalidArgument, "subgroup without topics");
    const int n = static_cast<int>(topics.size());
    if (total % n != 0) {
        throw Error(ErrorKind::IndivisibleQuota,
                    label + ": " + std::to_string(total) + " over " + std::to_string(n) +
                        " topics");
    }
    QuotaSubgroup g;
    g.label = std::move(label);
    g.total = total;
    g.per_topic = total / n;
    g.topics = std::move(topics);
    return g;
}

QuotaPlan plan_quotas(ConstraintKind task) {
    QuotaPlan plan;
    plan.task = task;
    switch (task) {
        case ConstraintKind::Shot:
            plan.subgroups.push_back(equal_split("all_topics", 200, model::topic_vocabulary()));
            break;
        case ConstraintKind::Temporal:
            plan.subgroups.push_back(
                equal_split("pre_context", 75, {"Knowledge", "Fitness", "Food"}));
            plan.subgroups.push_back(
                equal_split("post_context", 75, {"Sports", "Automotive", "Gaming"}));
            plan.subgroups.push_back(equal_split("both_contexts", 50, {"Film", "TV Series"}));
            break;
        case ConstraintKind::Color:
            plan.subgroups.push_back(equal_split("warm_tone", 70, {"Parenting", "Fashion"}));
            plan.subgroups.push_back(equal_split("cool_tone", 70, {"Tech", "Visual Arts"}));
            plan.subgroups.push_back(
                equal_split("neutral_tone", 70, {"Documentary", "Tourism"}));
            break;
        case ConstraintKind::Style:
            plan.subgroups.push_back(equal_split("live_action", 50, {"Variety Shows"}));
            plan.subgroups.push_back(equal_split("2d_animation", 50, {"Animation"}));
            plan.subgroups.push_back(equal_split("3d_animation", 50, {"Gaming"}));
            plan.subgroups.push_back(equal_split("pure_graphics", 50, {"Music"}));
            break;
        case ConstraintKind::Audio:
            plan.subgroups.push_back(
                equal_split("human_voice", 100, {"TV Series", "Documentary"}));
            plan.subgroups.push_back(equal_split("music", 50, {"Dance"}));
            plan.subgroups.push_back(equal_split("ambient_sound", 50, {"Animals"}));
            break;
        case ConstraintKind::Resolution:
            plan.subgroups.push_back(equal_split("1080p", 100, {"Fashion", "Film"}));
            plan.subgroups.push_back(
                equal_split("720p", 100, {"Lifestyle Vlogs", "Fitness"}));
            break;
    }
    return plan;
}

} // namespace shotscout::benchkit

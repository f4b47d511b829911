#pragma once
// Constraint-aware topic quota planning for benchmark construction.

#include <string>
#include <vector>

#include <json.hpp>

#include "shotscout/model/types.hpp"

namespace shotscout::benchkit {

struct QuotaSubgroup {
    std::string label;  // e.g. "pre_context", "warm_tone", "1080p"
    int total = 0;
    std::vector<std::string> topics;
    int per_topic = 0;

    bool operator==(const QuotaSubgroup&) const = default;
};

struct QuotaPlan {
    model::ConstraintKind task = model::ConstraintKind::Shot;
    std::vector<QuotaSubgroup> subgroups;

    int total() const;

    bool operator==(const QuotaPlan&) const = default;
};

void to_json(nlohmann::json& j, const QuotaPlan& plan);

// Splits `total` equally over `topics`; throws Error(IndivisibleQuota) when
// the division leaves a remainder.
QuotaSubgroup equal_split(std::string label, int total, std::vector<std::string> topics);

// Exact integer quotas per task. Shot spreads 200 samples evenly over all 20
// topics; the five constrained tasks follow their fixed subgroup ratios
// (Temporal 75:75:50, Color 70:70:70, Style 50:50:50:50, Audio 100:50:50,
// Resolution 100:100) with topics inside each subgroup split equally.
// Throws Error(IndivisibleQuota) when an equal split is impossible.
QuotaPlan plan_quotas(model::ConstraintKind task);

} // namespace shotscout::benchkit

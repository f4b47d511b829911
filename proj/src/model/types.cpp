#include "shotscout/model/types.hpp"

#include <algorithm>
#include <cmath>

#include "shotscout/errors.hpp"

namespace shotscout::model {

const char* to_string(ConstraintKind kind) {
    switch (kind) {
        case ConstraintKind::Shot: return "shot";
        case ConstraintKind::Temporal: return "temporal";
        case ConstraintKind::Color: return "color";
        case ConstraintKind::Style: return "style";
        case ConstraintKind::Audio: return "audio";
        case ConstraintKind::Resolution: return "resolution";
    }
    return "shot";
}

ConstraintKind constraint_kind_from_string(std::string_view s) {
    for (ConstraintKind kind : all_constraint_kinds()) {
        if (s == to_string(kind)) return kind;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown constraint kind: " + std::string(s));
}

const std::array<ConstraintKind, 6>& all_constraint_kinds() {
    static const std::array<ConstraintKind, 6> kinds = {
        ConstraintKind::Shot,   ConstraintKind::Temporal, ConstraintKind::Color,
        ConstraintKind::Style,  ConstraintKind::Audio,    ConstraintKind::Resolution,
    };
    return kinds;
}

const std::vector<std::string>& topic_vocabulary() {
    static const std::vector<std::string> topics = {
        "Variety Shows", "Animation", "Dance",    "Tech",           "Food",
        "Automotive",    "Sports",    "Lifestyle Vlogs", "Film",    "TV Series",
        "Documentary",   "Gaming",    "Music",    "Knowledge",      "Fashion",
        "Animals",       "Visual Arts", "Tourism", "Fitness",       "Parenting",
    };
    return topics;
}

bool is_known_topic(std::string_view topic) {
    const auto& topics = topic_vocabulary();
    return std::find(topics.begin(), topics.end(), topic) != topics.end();
}

std::string ShotQuery::full_text() const {
    if (constraint_text && !constraint_text->empty()) {
        return description + " " + *constraint_text;
    }
    return description;
}

void check_grid(const FrameGrid& grid) {
    const double d = grid.video.duration_s;
    if (grid.num_frames <= 0 || static_cast<int>(grid.frames.size()) != grid.num_frames) {
        throw Error(ErrorKind::InvalidArgument, "frame count mismatch");
    }
    if (d <= 0) throw Error(ErrorKind::InvalidArgument, "non-positive duration");
    for (int i = 0; i < grid.num_frames; ++i) {
        const FrameRef& f = grid.frames[static_cast<size_t>(i)];
        if (f.index != i) throw Error(ErrorKind::InvalidArgument, "indices not contiguous");
        double expect = (i + 0.5) / grid.num_frames * d;
        if (std::abs(f.timestamp_s - expect) > 1e-9 * std::max(1.0, std::abs(expect))) {
            throw Error(ErrorKind::InvalidArgument, "timestamp law violated at index " +
                                                        std::to_string(i));
        }
        if (!(f.timestamp_s > 0.0 && f.timestamp_s < d)) {
            throw Error(ErrorKind::InvalidArgument, "timestamp out of (0, D)");
        }
        if (i > 0 && f.timestamp_s <= grid.frames[static_cast<size_t>(i) - 1].timestamp_s) {
            throw Error(ErrorKind::InvalidArgument, "timestamps not strictly increasing");
        }
    }
}

void check_run_record(const RunRecord& record) {
    if (record.verdicts.size() > record.outcomes.size() ||
        record.outcomes.size() > record.candidates.size()) {
        throw Error(ErrorKind::InvalidArgument,
                    "|verdicts| <= |outcomes| <= |candidates| violated for " + record.sample_id);
    }
    if (record.final.success) {
        if (!record.final.winning_url || !record.final.winning_frame) {
            throw Error(ErrorKind::InvalidArgument,
                        "successful record lacks winning candidate/frame: " + record.sample_id);
        }
    }
}

namespace {

const std::string& pick(const std::string& en, const std::string& ch,
                        const std::string& language) {
    if (language == "en") return en;
    if (language == "ch") return ch;
    throw Error(ErrorKind::InvalidArgument, "unknown language tag: " + language);
}

} // namespace

ShotQuery query_from_sample(const BenchmarkSample& sample, ConstraintKind kind,
                            const std::string& language) {
    ShotQuery query;
    query.language = language;
    query.constraint_kind = kind;
    query.description = pick(sample.segment_description_en, sample.segment_description_ch,
                             language);
    if (query.description.empty()) {
        throw Error(ErrorKind::MissingField, "segment_description_" + language + " is empty");
    }
    if (kind == ConstraintKind::Shot) return query;

    switch (kind) {
        case ConstraintKind::Temporal: {
            const auto& ctx = language == "en" ? sample.context_description_en
                                               : sample.context_description_ch;
            const std::string& before = ctx[0];
            const std::string& after = ctx[1];
            if (before.empty() && after.empty()) {
                throw Error(ErrorKind::MissingField, "context_description_" + language);
            }
            std::string text;
            if (!before.empty()) text += "Before: " + before;
            if (!after.empty()) {
                if (!text.empty()) text += " ";
                text += "After: " + after;
            }
            query.constraint_text = text;
            break;
        }
        case ConstraintKind::Color:
            query.constraint_text =
                pick(sample.color_description_en, sample.color_description_ch, language);
            break;
        case ConstraintKind::Style:
            query.constraint_text =
                pick(sample.style_description_en, sample.style_description_ch, language);
            break;
        case ConstraintKind::Audio:
            query.constraint_text =
                pick(sample.audio_description_en, sample.audio_description_ch, language);
            break;
        case ConstraintKind::Resolution:
            if (sample.resolution.empty()) {
                throw Error(ErrorKind::MissingField, "resolution");
            }
            query.constraint_text = "(" + sample.resolution + ")";
            break;
        case ConstraintKind::Shot:
            break;
    }
    if (!query.constraint_text || query.constraint_text->empty()) {
        throw Error(ErrorKind::MissingField,
                    std::string(to_string(kind)) + "_description_" + language + " is empty");
    }
    return query;
}

} // namespace shotscout::model

#include "shotscout/benchkit/validate.hpp"

#include "shotscout/common/strings.hpp"
#include "shotscout/model/types.hpp"

namespace shotscout::benchkit {

using nlohmann::json;

bool ValidationReport::passed() const {
    for (const auto& v : violations) {
        if (v.level == Violation::Level::Fail) return false;
    }
    return true;
}

bool ValidationReport::warned() const {
    for (const auto& v : violations) {
        if (v.level == Violation::Level::Warn) return true;
    }
    return false;
}

json ValidationReport::to_json() const {
    json items = json::array();
    for (const auto& v : violations) {
        items.push_back(json{{"field", v.field},
                             {"level", v.level == Violation::Level::Fail ? "fail" : "warn"},
                             {"message", v.message}});
    }
    return json{{"passed", passed()}, {"violations", items}};
}

namespace {

const std::vector<std::string>& required_string_fields() {
    static const std::vector<std::string> fields = {
        "id",
        "video_link",
        "video_source",
        "category",
        "timestamp",
        "resolution",
        "segment_description_ch",
        "segment_description_en",
        "color_description_ch",
        "color_description_en",
        "style_description_ch",
        "style_description_en",
        "audio_description_ch",
        "audio_description_en",
    };
    return fields;
}

void check_no_fences(const std::string& field, const json& value,
                     std::vector<Violation>& out) {
    if (value.is_string()) {
        if (value.get<std::string>().find("```") != std::string::npos) {
            out.push_back({field, Violation::Level::Fail, "markdown fence in field"});
        }
    } else if (value.is_array() || value.is_object()) {
        for (const auto& item : value) check_no_fences(field, item, out);
    }
}

} // namespace

ValidationReport validate_record(const json& record, const ValidationBands& bands) {
    ValidationReport report;
    auto fail = [&](std::string field, std::string message) {
        report.violations.push_back({std::move(field), Violation::Level::Fail,
                                     std::move(message)});
    };
    auto warn = [&](std::string field, std::string message) {
        report.violations.push_back({std::move(field), Violation::Level::Warn,
                                     std::move(message)});
    };

    if (!record.is_object()) {
        fail("<record>", "record is not a JSON object");
        return report;
    }

    for (const auto& field : required_string_fields()) {
        if (!record.contains(field)) {
            fail(field, "required field missing");
        } else if (!record.at(field).is_string()) {
            fail(field, "must be a string");
        }
    }
    for (const char* field : {"context_description_ch", "context_description_en"}) {
        if (!record.contains(field)) {
            fail(field, "required field missing");
            continue;
        }
        const json& value = record.at(field);
        if (!value.is_array() || value.size() != 2) {
            fail(field, "must be an array of exactly 2 elements");
            continue;
        }
        for (const auto& item : value) {
            if (!item.is_string()) fail(field, "elements must be strings");
        }
    }

    if (record.contains("segment_description_ch") &&
        record.at("segment_description_ch").is_string()) {
        const size_t len = utf8_length(record.at("segment_description_ch").get<std::string>());
        if (len < bands.fail_lo || len > bands.fail_hi) {
            fail("segment_description_ch",
                 "length " + std::to_string(len) + " outside [" + std::to_string(bands.fail_lo) +
                     ", " + std::to_string(bands.fail_hi) + "]");
        } else if (len < bands.pass_lo || len > bands.pass_hi) {
            warn("segment_description_ch",
                 "length " + std::to_string(len) + " outside the target band [" +
                     std::to_string(bands.pass_lo) + ", " + std::to_string(bands.pass_hi) + "]");
        }
    }

    if (record.contains("resolution") && record.at("resolution").is_string()) {
        const std::string res = record.at("resolution").get<std::string>();
        if (res != "1080P" && res != "720P") {
            fail("resolution", "must be 1080P or 720P, got: " + res);
        }
    }
    if (record.contains("category") && record.at("category").is_string()) {
        const std::string category = record.at("category").get<std::string>();
        if (!model::is_known_topic(category)) {
            fail("category", "not in the topic vocabulary: " + category);
        }
    }

    for (auto it = record.begin(); it != record.end(); ++it) {
        check_no_fences(it.key(), it.value(), report.violations);
    }
    return report;
}

} // namespace shotscout::benchkit

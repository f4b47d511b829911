#pragma once
// Structural validation of benchmark records against the on-disk schema.

#include <string>
#include <vector>

#include <json.hpp>

namespace shotscout::benchkit {

struct Violation {
    enum class Level { Warn, Fail };

    std::string field;
    Level level = Level::Fail;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool passed() const;  // no Fail entries
    bool warned() const;
    nlohmann::json to_json() const;
};

struct ValidationBands {
    // segment_description_ch code-point count: pass within [pass_lo, pass_hi],
    // warn within [fail_lo, fail_hi] outside the pass band, fail beyond.
    size_t pass_lo = 240;
    size_t pass_hi = 260;
    size_t fail_lo = 230;
    size_t fail_hi = 270;
};

// Checks required fields and names, 2-element context arrays, the Chinese
// description length bands, the resolution enum, the category vocabulary and
// the absence of markdown fences. Reports violations, never throws.
ValidationReport validate_record(const nlohmann::json& record,
                                 const ValidationBands& bands = {});

} // namespace shotscout::benchkit

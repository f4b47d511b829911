#include "shotscout/harness/ablate.hpp"

#include "shotscout/common/strings.hpp"
#include "shotscout/errors.hpp"

namespace shotscout::harness {

AblationSpec spec_from_mxn(const PipelineConfig& base, const std::string& notation) {
    auto parts = split(to_lower(notation), 'x');
    if (parts.size() != 2) {
        throw Error(ErrorKind::InvalidArgument, "expected MxN notation, got: " + notation);
    }
    AblationSpec spec;
    spec.label = notation;
    spec.config = base;
    spec.config.queries_per_sample = std::stoi(parts[0]);
    spec.config.urls_per_query = std::stoi(parts[1]);
    spec.config.check();
    return spec;
}

AblationSpec spec_from_sampling(const PipelineConfig& base, const std::string& notation) {
    AblationSpec spec;
    spec.label = notation;
    spec.config = base;
    spec.config.policy = sampler::SamplingPolicy::from_notation(notation);
    spec.config.check();
    return spec;
}

std::vector<AblationSpec> preset_grid(const PipelineConfig& base, const std::string& which) {
    std::vector<AblationSpec> grid;
    if (which == "queries") {
        for (const char* n : {"1x2", "2x2", "3x2"}) grid.push_back(spec_from_mxn(base, n));
    } else if (which == "urls") {
        for (const char* n : {"2x1", "2x2", "2x3"}) grid.push_back(spec_from_mxn(base, n));
    } else if (which == "sampling") {
        for (const char* n : {"32-64-96", "64-128-192", "96-192-288"}) {
            grid.push_back(spec_from_sampling(base, n));
        }
    } else {
        throw Error(ErrorKind::InvalidArgument,
                    "unknown preset (queries|urls|sampling): " + which);
    }
    return grid;
}

std::vector<Report> ablate(const std::vector<AblationSpec>& grid,
                           const std::vector<TaskedSample>& samples,
                           const backends::Backends& backends,
                           const std::filesystem::path& workdir) {
    std::vector<Report> reports;
    reports.reserve(grid.size());
    for (const auto& spec : grid) {
        reports.push_back(
            run_benchmark(samples, spec.config, backends, workdir, spec.label).report);
    }
    return reports;
}

} // namespace shotscout::harness

#pragma once
// Ablation grids over (M x N) and sampling (X-Y-Z) settings.

#include <string>
#include <vector>

#include "shotscout/harness/pipeline.hpp"

namespace shotscout::harness {

struct AblationSpec {
    std::string label;  // e.g. "2x2" or "64-128-192"
    PipelineConfig config;
};

// "MxN" notation: queries per sample x URLs per query.
AblationSpec spec_from_mxn(const PipelineConfig& base, const std::string& notation);
// "X-Y-Z" or "flat-N" sampling notation.
AblationSpec spec_from_sampling(const PipelineConfig& base, const std::string& notation);

// Preset grids: "queries" (1x2, 2x2, 3x2), "urls" (2x1, 2x2, 2x3) and
// "sampling" (32-64-96, 64-128-192, 96-192-288).
std::vector<AblationSpec> preset_grid(const PipelineConfig& base, const std::string& which);

// One report per config; each run lands under runs/<label>/ in the workdir.
std::vector<Report> ablate(const std::vector<AblationSpec>& grid,
                           const std::vector<TaskedSample>& samples,
                           const backends::Backends& backends,
                           const std::filesystem::path& workdir);

} // namespace shotscout::harness

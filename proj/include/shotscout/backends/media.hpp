#pragma once
// Media extraction via the pluggable subprocess tool (default: the bundled
// `mediatool`). Failures surface as Error(MediaToolFailure) with the tool's
// stderr attached.

#include <filesystem>
#include <string>

#include "shotscout/backends/interfaces.hpp"

namespace shotscout::backends {

// Resolution order: $SHOTSCOUT_MEDIATOOL, then a `mediatool` binary next to
// the running executable, then PATH lookup.
std::filesystem::path default_mediatool_path();

class SubprocessExtractor : public MediaExtractor {
public:
    explicit SubprocessExtractor(std::filesystem::path tool = default_mediatool_path());

    ProbeInfo probe(const std::filesystem::path& media) override;
    void extract_frame(const std::filesystem::path& video, double t_seconds,
                       const std::filesystem::path& out_jpg) override;
    void extract_frames(const std::filesystem::path& video,
                        const std::vector<double>& timestamps,
                        const std::filesystem::path& out_dir) override;
    void extract_audio(const std::filesystem::path& video, const std::filesystem::path& out_mp3,
                       std::optional<std::pair<double, double>> window) override;

    // Test-clip generation (synthetic pattern + sine audio).
    void synth_clip(const std::filesystem::path& out_mp4, double duration_s, int seed = 0);

private:
    std::filesystem::path tool_;
};

} // namespace shotscout::backends

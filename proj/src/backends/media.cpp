#include "shotscout/backends/media.hpp"

#include <unistd.h>

#include <cstdlib>

#include <json.hpp>

#include "shotscout/common/strings.hpp"
#include "shotscout/common/subprocess.hpp"

namespace shotscout::backends {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path default_mediatool_path() {
    if (const char* env = std::getenv("SHOTSCOUT_MEDIATOOL"); env && *env) {
        return env;
    }
    char buf[4096];
    ssize_t n = ::readlink("/proc/self/exe", buf, sizeof(buf) - 1);
    if (n > 0) {
        buf[n] = '\0';
        fs::path sibling = fs::path(buf).parent_path() / "mediatool";
        if (fs::exists(sibling)) return sibling;
    }
    return "mediatool";
}

SubprocessExtractor::SubprocessExtractor(fs::path tool) : tool_(std::move(tool)) {}

namespace {

json run_tool(const fs::path& tool, std::vector<std::string> args) {
    args.insert(args.begin(), tool.string());
    CommandResult result = run_command(args);
    if (!result.ok()) {
        throw Error(ErrorKind::MediaToolFailure,
                    args[1] + " failed (exit " + std::to_string(result.exit_code) +
                        "): " + trim(result.err));
    }
    try {
        return json::parse(result.out);
    } catch (const json::exception&) {
        throw Error(ErrorKind::MediaToolFailure, "unparseable tool output: " + result.out);
    }
}

} // namespace

ProbeInfo SubprocessExtractor::probe(const fs::path& media) {
    json out = run_tool(tool_, {"probe", media.string()});
    ProbeInfo info;
    info.duration_s = out.value("duration_s", 0.0);
    info.width = out.value("width", 0);
    info.height = out.value("height", 0);
    info.has_audio = out.value("has_audio", false);
    return info;
}

void SubprocessExtractor::extract_frame(const fs::path& video, double t_seconds,
                                        const fs::path& out_jpg) {
    run_tool(tool_, {"frame", video.string(), format_seconds(t_seconds), out_jpg.string()});
}

void SubprocessExtractor::extract_frames(const fs::path& video,
                                         const std::vector<double>& timestamps,
                                         const fs::path& out_dir) {
    std::string csv;
    for (double t : timestamps) {
        if (!csv.empty()) csv += ",";
        csv += format_seconds(t);
    }
    run_tool(tool_, {"frames", video.string(), out_dir.string(), csv});
}

void SubprocessExtractor::extract_audio(const fs::path& video, const fs::path& out_mp3,
                                        std::optional<std::pair<double, double>> window) {
    std::vector<std::string> args{"audio", video.string(), out_mp3.string()};
    if (window) {
        args.push_back(format_seconds(window->first));
        args.push_back(format_seconds(window->second));
    }
    run_tool(tool_, args);
}

void SubprocessExtractor::synth_clip(const fs::path& out_mp4, double duration_s, int seed) {
    run_tool(tool_, {"synth", out_mp4.string(), format_seconds(duration_s),
                     std::to_string(seed)});
}

} // namespace shotscout::backends

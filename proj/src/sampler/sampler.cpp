#include "shotscout/sampler/sampler.hpp"

#include <fstream>

#include "shotscout/common/hash.hpp"
#include "shotscout/common/strings.hpp"
#include "shotscout/errors.hpp"
#include "shotscout/model/serde.hpp"

namespace shotscout::sampler {

namespace fs = std::filesystem;
using nlohmann::json;

SamplingPolicy SamplingPolicy::closed_source_default() {
    SamplingPolicy p;
    p.tiers = {{180.0, 64}, {600.0, 128}, {std::nullopt, 192}};
    return p;
}

SamplingPolicy SamplingPolicy::open_source_default() { return flat_n(64); }

SamplingPolicy SamplingPolicy::flat_n(int n) {
    SamplingPolicy p;
    p.tiers = {{std::nullopt, n}};
    p.flat = n;
    return p;
}

SamplingPolicy SamplingPolicy::from_notation(const std::string& notation) {
    if (starts_with(notation, "flat-")) {
        return flat_n(std::stoi(notation.substr(5)));
    }
    auto parts = split(notation, '-');
    if (parts.size() != 3) {
        throw Error(ErrorKind::InvalidArgument, "sampling notation must be X-Y-Z: " + notation);
    }
    SamplingPolicy p;
    p.tiers = {{180.0, std::stoi(parts[0])},
               {600.0, std::stoi(parts[1])},
               {std::nullopt, std::stoi(parts[2])}};
    p.check();
    return p;
}

std::string SamplingPolicy::notation() const {
    if (flat) return "flat-" + std::to_string(*flat);
    std::string out;
    for (const auto& tier : tiers) {
        if (!out.empty()) out += "-";
        out += std::to_string(tier.frames);
    }
    return out;
}

void SamplingPolicy::check() const {
    if (flat) {
        if (*flat <= 0) throw Error(ErrorKind::InvalidArgument, "flat frame count must be > 0");
        return;
    }
    if (tiers.empty()) throw Error(ErrorKind::InvalidArgument, "policy has no tiers");
    double prev = 0.0;
    for (size_t i = 0; i < tiers.size(); ++i) {
        if (tiers[i].frames <= 0) {
            throw Error(ErrorKind::InvalidArgument, "tier frame count must be > 0");
        }
        const bool last = i + 1 == tiers.size();
        if (last) {
            if (tiers[i].upper_bound_s) {
                throw Error(ErrorKind::InvalidArgument, "last tier must be unbounded");
            }
        } else {
            if (!tiers[i].upper_bound_s || *tiers[i].upper_bound_s <= prev) {
                throw Error(ErrorKind::InvalidArgument,
                            "tier bounds must be strictly increasing");
            }
            prev = *tiers[i].upper_bound_s;
        }
    }
}

void to_json(json& j, const SamplingPolicy& p) {
    json tiers = json::array();
    for (const auto& tier : p.tiers) {
        tiers.push_back(json{
            {"upper_bound_s", tier.upper_bound_s ? json(*tier.upper_bound_s) : json(nullptr)},
            {"frames", tier.frames}});
    }
    j = json{{"tiers", tiers}, {"flat", p.flat ? json(*p.flat) : json(nullptr)}};
}

void from_json(const json& j, SamplingPolicy& p) {
    p.tiers.clear();
    for (const auto& t : j.at("tiers")) {
        Tier tier;
        if (!t.at("upper_bound_s").is_null()) tier.upper_bound_s = t.at("upper_bound_s").get<double>();
        tier.frames = t.at("frames").get<int>();
        p.tiers.push_back(tier);
    }
    p.flat.reset();
    if (j.contains("flat") && !j.at("flat").is_null()) p.flat = j.at("flat").get<int>();
}

int frames_for_duration(const SamplingPolicy& policy, double duration_s) {
    if (duration_s <= 0) throw Error(ErrorKind::InvalidArgument, "duration must be > 0");
    policy.check();
    if (policy.flat) return *policy.flat;
    for (const auto& tier : policy.tiers) {
        if (!tier.upper_bound_s || duration_s < *tier.upper_bound_s) return tier.frames;
    }
    return policy.tiers.back().frames;
}

double timestamp_of(int i, int n, double duration_s) {
    if (duration_s <= 0) throw Error(ErrorKind::InvalidArgument, "duration must be > 0");
    if (n <= 0 || i < 0 || i >= n) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "frame index " + std::to_string(i) + " outside [0, " + std::to_string(n) +
                        ")");
    }
    return (i + 0.5) / n * duration_s;
}

std::string video_cache_key(const model::VideoAsset& video) {
    if (!video.url.empty()) return sha256_hex(video.url);
    return sha256_file_hex(video.local_path);
}

namespace {

constexpr const char* kGridFile = "grid.json";
constexpr const char* kAudioFile = "audio_full.mp3";

std::optional<model::FrameGrid> load_cached_grid(const fs::path& grid_dir,
                                                 const model::VideoAsset& video, int n,
                                                 bool with_audio, const fs::path& audio_path) {
    const fs::path meta = grid_dir / kGridFile;
    if (!fs::exists(meta)) return std::nullopt;
    json j;
    try {
        std::ifstream in(meta);
        in >> j;
    } catch (...) {
        return std::nullopt;
    }
    model::FrameGrid grid;
    try {
        grid = j.get<model::FrameGrid>();
    } catch (...) {
        return std::nullopt;
    }
    if (grid.num_frames != n) return std::nullopt;
    for (const auto& frame : grid.frames) {
        if (!fs::exists(frame.path)) return std::nullopt;
    }
    grid.video = video;  // refresh the (possibly re-downloaded) asset ref
    if (with_audio) {
        if (!fs::exists(audio_path)) return std::nullopt;
        grid.audio_path = audio_path.string();
    } else {
        grid.audio_path.reset();
    }
    return grid;
}

} // namespace

model::FrameGrid sample_with_count(const model::VideoAsset& video, int num_frames,
                                   bool with_audio, backends::MediaExtractor& extractor,
                                   const fs::path& cache_dir) {
    if (!video.probe_ok) {
        throw Error(ErrorKind::InvalidArgument, "cannot sample an unprobed video");
    }
    const double duration = video.duration_s;
    const std::string key = video_cache_key(video);
    const fs::path video_dir = cache_dir / "videos" / key;
    const fs::path grid_dir = video_dir / ("frames_" + std::to_string(num_frames));
    const fs::path audio_path = video_dir / kAudioFile;

    if (auto cached = load_cached_grid(grid_dir, video, num_frames, with_audio, audio_path)) {
        return *cached;
    }

    fs::create_directories(grid_dir);
    std::vector<double> timestamps;
    timestamps.reserve(static_cast<size_t>(num_frames));
    for (int i = 0; i < num_frames; ++i) timestamps.push_back(timestamp_of(i, num_frames, duration));

    extractor.extract_frames(video.local_path, timestamps, grid_dir);

    model::FrameGrid grid;
    grid.video = video;
    grid.num_frames = num_frames;
    for (int i = 0; i < num_frames; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%04d.jpg", i);
        const fs::path frame_path = grid_dir / name;
        if (!fs::exists(frame_path)) {
            throw Error(ErrorKind::PartialGrid, "frame " + std::to_string(i) + " of " +
                                                    std::to_string(num_frames) + " missing");
        }
        grid.frames.push_back({i, timestamps[static_cast<size_t>(i)], frame_path.string()});
    }

    if (with_audio) {
        if (!fs::exists(audio_path)) {
            extractor.extract_audio(video.local_path, audio_path, std::nullopt);
        }
        grid.audio_path = audio_path.string();
    }

    {
        std::ofstream out(grid_dir / kGridFile);
        json j = grid;
        j["duration_s"] = duration;
        j["timestamps"] = timestamps;
        out << j.dump(2) << '\n';
    }
    return grid;
}

model::FrameGrid sample(const model::VideoAsset& video, const SamplingPolicy& policy,
                        bool with_audio, backends::MediaExtractor& extractor,
                        const fs::path& cache_dir) {
    const int n = frames_for_duration(policy, video.duration_s);
    return sample_with_count(video, n, with_audio, extractor, cache_dir);
}

} // namespace shotscout::sampler

#include "shotscout/benchkit/bundle.hpp"

#include <fstream>

#include <json.hpp>

#include "shotscout/common/vecmath.hpp"
#include "shotscout/errors.hpp"

namespace shotscout::benchkit {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string> AssetBundle::chronological_frames() const {
    return {preceding[2], preceding[1], preceding[0], target_frame,
            following[0], following[1], following[2]};
}

AssetBundle extract_bundle(const model::VideoAsset& video, double t,
                           backends::MediaExtractor& extractor, const fs::path& out_dir) {
    const double d = video.duration_s;
    if (!(t >= 5.0 && t <= d - 5.0)) {
        throw Error(ErrorKind::WindowClipped,
                    "target " + std::to_string(t) + " s needs the full [t-5, t+5] window inside [0, " +
                        std::to_string(d) + "]");
    }
    fs::create_directories(out_dir);

    // one batch, chronological: t-3 .. t+3
    std::vector<double> times;
    for (int off = -3; off <= 3; ++off) times.push_back(t + off);
    extractor.extract_frames(video.local_path, times, out_dir);

    auto frame_at = [&](int batch_index) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%04d.jpg", batch_index);
        return (out_dir / name).string();
    };

    AssetBundle bundle;
    bundle.target_timestamp_s = t;
    bundle.target_frame = frame_at(3);
    bundle.preceding = {frame_at(2), frame_at(1), frame_at(0)};   // t-1, t-2, t-3
    bundle.following = {frame_at(4), frame_at(5), frame_at(6)};   // t+1, t+2, t+3

    const fs::path audio = out_dir / "audio.mp3";
    extractor.extract_audio(video.local_path, audio, std::make_pair(t - 5.0, 10.0));
    bundle.audio = audio.string();

    const fs::path meta = out_dir / "meta.json";
    {
        json j{
            {"target_timestamp_s", t},
            {"duration_s", d},
            {"width", video.width},
            {"height", video.height},
            {"paths",
             json{{"target_frame", bundle.target_frame},
                  {"preceding_frames", bundle.preceding},
                  {"following_frames", bundle.following},
                  {"audio_clip", bundle.audio}}},
        };
        std::ofstream out(meta);
        out << j.dump(2) << '\n';
    }
    bundle.meta = meta.string();
    return bundle;
}

GateDecision diversity_gate(const AssetBundle& bundle, backends::EmbeddingBackend& embed,
                            const std::string& embed_model, const DiversityOptions& options) {
    const std::vector<std::string> frames = bundle.chronological_frames();
    std::vector<std::vector<float>> vecs;
    vecs.reserve(frames.size());
    for (const auto& frame : frames) {
        vecs.push_back(
            embed.embed(backends::EmbeddingRequest{backends::Part::image(frame), embed_model}));
    }

    auto similar = [&](size_t i, size_t j) {
        return cosine_similarity(vecs[i], vecs[j]) > options.threshold;  // strict >
    };

    if (options.all_pairs) {
        for (size_t i = 0; i < vecs.size(); ++i) {
            for (size_t j = i + 1; j < vecs.size(); ++j) {
                if (!similar(i, j)) return GateDecision::Accept;
            }
        }
        return GateDecision::Reject;
    }
    for (size_t i = 0; i + 1 < vecs.size(); ++i) {
        if (!similar(i, i + 1)) return GateDecision::Accept;
    }
    return GateDecision::Reject;
}

double draw_target_timestamp(double duration_s, std::mt19937_64& rng) {
    if (duration_s < 10.0) {
        throw Error(ErrorKind::WindowClipped,
                    "video shorter than the 10 s window: " + std::to_string(duration_s));
    }
    std::uniform_real_distribution<double> dist(5.0, duration_s - 5.0);
    return dist(rng);
}

BundleBuild build_diverse_bundle(const model::VideoAsset& video,
                                 backends::MediaExtractor& extractor,
                                 backends::EmbeddingBackend& embed,
                                 const std::string& embed_model, const fs::path& out_dir,
                                 std::mt19937_64& rng, int max_attempts,
                                 const DiversityOptions& options) {
    BundleBuild build;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        build.attempts = attempt;
        const double t = draw_target_timestamp(video.duration_s, rng);
        const fs::path dir = out_dir / ("attempt_" + std::to_string(attempt));
        build.bundle = extract_bundle(video, t, extractor, dir);
        if (diversity_gate(build.bundle, embed, embed_model, options) == GateDecision::Accept) {
            build.accepted = true;
            return build;
        }
    }
    return build;  // last rejected bundle, accepted == false
}

} // namespace shotscout::benchkit

#pragma once
// Shared test helpers: temp dirs, synthetic media, record builders.

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "shotscout/backends/media.hpp"
#include "shotscout/model/types.hpp"

namespace shotscout::testutil {

namespace fs = std::filesystem;

// Unique directory under the system temp root, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag = "shotscout") {
        auto base = fs::temp_directory_path() / (tag + "-XXXXXX");
        std::string tmpl = base.string();
        if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
        path_ = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& sub) const { return path_ / sub; }

private:
    fs::path path_;
};

inline fs::path write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

// Synthesizes a small test clip (pattern video + sine audio).
inline fs::path make_clip(backends::SubprocessExtractor& tool, const fs::path& dir,
                          const std::string& name, double duration_s, int seed) {
    fs::create_directories(dir);
    const fs::path out = dir / name;
    tool.synth_clip(out, duration_s, seed);
    return out;
}

inline model::VideoAsset probe_asset(backends::SubprocessExtractor& tool, const fs::path& clip,
                                     const std::string& url = "") {
    backends::ProbeInfo info = tool.probe(clip);
    model::VideoAsset asset;
    asset.url = url;
    asset.local_path = clip.string();
    asset.duration_s = info.duration_s;
    asset.width = info.width;
    asset.height = info.height;
    asset.probe_ok = true;
    return asset;
}

// n-code-point CJK string (3 bytes each), for description-length checks.
inline std::string cjk_text(size_t n) {
    std::string out;
    out.reserve(n * 3);
    for (size_t i = 0; i < n; ++i) out += "\xE8\xA7\x86";  // one CJK code point
    return out;
}

// A structurally valid benchmark record.
inline model::BenchmarkSample make_sample(const std::string& id,
                                          const std::string& category = "Dance") {
    model::BenchmarkSample s;
    s.id = id;
    s.video_link = "https://www.youtube.com/watch?v=aaaaaaaaaaa";
    s.video_source = "YouTube";
    s.category = category;
    s.timestamp = "2025-06-01 12:00:00";
    s.resolution = "1080P";
    s.segment_description_ch = cjk_text(250);
    s.segment_description_en = "sample " + id + " keyframe description";
    s.context_description_ch = {cjk_text(20), cjk_text(20)};
    s.context_description_en = {"earlier the stage is empty", "later the crowd cheers"};
    s.color_description_ch = cjk_text(12);
    s.color_description_en = "warm orange tones";
    s.style_description_ch = cjk_text(12);
    s.style_description_en = "live-action footage";
    s.audio_description_ch = cjk_text(12);
    s.audio_description_en = "upbeat music with a steady kick";
    s.asset_paths.target_frame = id + "_gt.jpg";
    return s;
}

inline uint64_t mix_seed(uint64_t a, uint64_t b) { return a * 6364136223846793005ULL + b; }

} // namespace shotscout::testutil

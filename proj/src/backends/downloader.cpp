#include "shotscout/backends/downloader.hpp"

#include "shotscout/common/strings.hpp"
#include "shotscout/common/subprocess.hpp"

namespace shotscout::backends {

namespace fs = std::filesystem;

std::vector<std::string> default_downloader_command() {
    return {"yt-dlp", "-f", "mp4", "--no-playlist", "-o", "{DEST}", "{URL}"};
}

namespace {

std::string host_of(const std::string& url) {
    size_t scheme = url.find("://");
    size_t start = scheme == std::string::npos ? 0 : scheme + 3;
    size_t end = url.find_first_of("/?#", start);
    return url.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

struct HostSlot {
    HostSlot(std::mutex& mu, std::condition_variable& cv, std::map<std::string, int>& counts,
             std::string host, int limit)
        : mu_(mu), cv_(cv), counts_(counts), host_(std::move(host)) {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [&] { return counts_[host_] < limit; });
        ++counts_[host_];
    }
    ~HostSlot() {
        {
            std::lock_guard lock(mu_);
            --counts_[host_];
        }
        cv_.notify_all();
    }

    std::mutex& mu_;
    std::condition_variable& cv_;
    std::map<std::string, int>& counts_;
    std::string host_;
};

} // namespace

CommandFetcher::CommandFetcher(std::vector<std::string> command_template,
                               std::shared_ptr<MediaExtractor> extractor, int per_host_limit)
    : command_template_(std::move(command_template)), extractor_(std::move(extractor)),
      per_host_limit_(per_host_limit) {}

model::VideoAsset CommandFetcher::fetch(const std::string& canonical_url,
                                        const fs::path& dest_dir) {
    fs::create_directories(dest_dir);
    const fs::path dest = dest_dir / "video.mp4";

    std::vector<std::string> argv;
    argv.reserve(command_template_.size());
    for (const auto& token : command_template_) {
        std::string t = replace_all(token, "{URL}", canonical_url);
        t = replace_all(t, "{DEST}", dest.string());
        argv.push_back(std::move(t));
    }

    CommandResult result;
    {
        HostSlot slot(mu_, cv_, in_flight_, host_of(canonical_url), per_host_limit_);
        result = run_command(argv);
    }
    if (!result.ok()) {
        throw Error(ErrorKind::Unreachable,
                    canonical_url + ": downloader exit " + std::to_string(result.exit_code) +
                        ": " + trim(result.err).substr(0, 240));
    }
    if (!fs::exists(dest) || fs::file_size(dest) == 0) {
        throw Error(ErrorKind::Truncated, canonical_url + ": downloader left no file");
    }

    ProbeInfo info;
    try {
        info = extractor_->probe(dest);
    } catch (const Error&) {
        throw Error(ErrorKind::Truncated, canonical_url + ": downloaded file failed probe");
    }
    if (info.duration_s <= 0) {
        throw Error(ErrorKind::Truncated, canonical_url + ": probed duration <= 0");
    }

    model::VideoAsset asset;
    asset.url = canonical_url;
    asset.local_path = dest.string();
    asset.duration_s = info.duration_s;
    asset.width = info.width;
    asset.height = info.height;
    asset.probe_ok = true;
    return asset;
}

} // namespace shotscout::backends

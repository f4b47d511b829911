#pragma once
// Video download via a pluggable external command (yt-dlp by default).
// Contract: the command receives the URL and an exact output file path via
// the {URL} and {DEST} tokens, must exit 0 and leave a complete media file at
// {DEST}; metadata comes from probing that file.

#include <condition_variable>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "shotscout/backends/interfaces.hpp"

namespace shotscout::backends {

std::vector<std::string> default_downloader_command();  // yt-dlp invocation

class CommandFetcher : public VideoFetcher {
public:
    CommandFetcher(std::vector<std::string> command_template,
                   std::shared_ptr<MediaExtractor> extractor, int per_host_limit = 2);

    model::VideoAsset fetch(const std::string& canonical_url,
                            const std::filesystem::path& dest_dir) override;

private:
    std::vector<std::string> command_template_;
    std::shared_ptr<MediaExtractor> extractor_;

    // per-host concurrency cap
    int per_host_limit_;
    std::mutex mu_;
    std::condition_variable cv_;
    std::map<std::string, int> in_flight_;
};

} // namespace shotscout::backends

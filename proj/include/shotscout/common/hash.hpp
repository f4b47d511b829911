#pragma once
// SHA-256 helpers (OpenSSL EVP). Used for request hashing, cache keys and
// config fingerprints.

#include <filesystem>
#include <string>
#include <string_view>

namespace shotscout {

std::string sha256_hex(std::string_view data);

// Streams the file; throws Error(IoError) if unreadable.
std::string sha256_file_hex(const std::filesystem::path& path);

} // namespace shotscout

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace shotscout {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char delim);

// Number of Unicode code points in a UTF-8 string (continuation bytes skipped).
size_t utf8_length(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

// Replaces every occurrence of `token` in `text`.
std::string replace_all(std::string text, std::string_view token, std::string_view value);

// Formats seconds without trailing zero noise: integral values print as
// integers, everything else with up to 3 decimals.
std::string format_seconds(double s);

} // namespace shotscout

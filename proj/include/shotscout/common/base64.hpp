#pragma once

#include <string>
#include <string_view>

namespace shotscout {

std::string base64_encode(std::string_view data);

} // namespace shotscout

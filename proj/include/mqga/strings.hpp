#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mqga {

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

} // namespace mqga

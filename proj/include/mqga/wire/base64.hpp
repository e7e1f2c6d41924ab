#pragma once

#include <string>
#include <string_view>

namespace mqga::wire {

std::string base64_encode(std::string_view bytes);

// Throws ProtocolError("bad_base64") on any non-alphabet input or bad padding.
std::string base64_decode(std::string_view text);

} // namespace mqga::wire

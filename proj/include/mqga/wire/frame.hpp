#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "mqga/wire/command.hpp"

namespace mqga::wire {

// Wire format: [u32 big-endian payload length][UTF-8 payload].
inline constexpr std::size_t kMaxFrameBytes = 16 * 1024 * 1024;

// Throws ProtocolError("frame_too_large") if the payload exceeds the limit.
std::string encode_frame(const Command& command);

// Incremental decoder: feed arbitrary chunks, pull complete commands.
// Decoding is invariant to how the byte stream is partitioned into chunks.
class FrameDecoder {
  public:
    void feed(std::string_view bytes);

    // Next complete command, or nullopt if more bytes are needed.
    // Throws ProtocolError on an oversized frame or malformed payload; the
    // decoder must not be used again after a throw.
    std::optional<Command> next();

    std::size_t buffered() const { return buffer_.size(); }

  private:
    std::string buffer_;
};

} // namespace mqga::wire

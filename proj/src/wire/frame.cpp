#include "mqga/wire/frame.hpp"

#include <cstdint>

#include "mqga/errors.hpp"

namespace mqga::wire {

std::string encode_frame(const Command& command) {
    const std::string payload = encode_payload(command);
    if (payload.size() > kMaxFrameBytes)
        throw ProtocolError("frame_too_large",
                            "payload of " + std::to_string(payload.size()) + " bytes exceeds " +
                                std::to_string(kMaxFrameBytes));
    const auto len = static_cast<std::uint32_t>(payload.size());
    std::string out;
    out.reserve(4 + payload.size());
    out += static_cast<char>((len >> 24) & 0xff);
    out += static_cast<char>((len >> 16) & 0xff);
    out += static_cast<char>((len >> 8) & 0xff);
    out += static_cast<char>(len & 0xff);
    out += payload;
    return out;
}

void FrameDecoder::feed(std::string_view bytes) {
    buffer_.append(bytes.data(), bytes.size());
}

std::optional<Command> FrameDecoder::next() {
    if (buffer_.size() < 4)
        return std::nullopt;
    const auto b = [this](std::size_t i) {
        return static_cast<std::uint32_t>(static_cast<unsigned char>(buffer_[i]));
    };
    const std::uint32_t len = (b(0) << 24) | (b(1) << 16) | (b(2) << 8) | b(3);
    // Reject oversized frames from the length prefix alone, before buffering the body.
    if (len > kMaxFrameBytes)
        throw ProtocolError("frame_too_large", "declared frame length " + std::to_string(len) +
                                                   " exceeds " + std::to_string(kMaxFrameBytes));
    if (buffer_.size() < 4 + static_cast<std::size_t>(len))
        return std::nullopt;
    Command command = decode_payload(std::string_view{buffer_}.substr(4, len));
    buffer_.erase(0, 4 + static_cast<std::size_t>(len));
    return command;
}

} // namespace mqga::wire

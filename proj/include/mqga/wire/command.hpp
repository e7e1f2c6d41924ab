#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mqga::wire {

inline constexpr std::uint32_t kProtocolVersion = 1;

enum class Op {
    Hello,
    Declare,
    Publish,
    Subscribe,
    Ack,
    Deliver,
    Ok,
    Err,
    Stats,
    StatsReply,
    Close,
};

std::string_view op_name(Op op);
std::optional<Op> op_from_name(std::string_view name);

// One protocol command. A single struct covers every op; fields not used by
// an op stay at their defaults and are omitted from the encoded payload.
struct Command {
    Op op = Op::Ok;

    // HELLO
    std::string role;
    std::uint32_t protocol_version = 0;

    // DECLARE / PUBLISH / SUBSCRIBE / STATS / DELIVER
    std::string queue;

    // PUBLISH / DELIVER (raw bytes; base64 on the wire)
    std::string body;
    std::string correlation_id;
    std::string reply_to;

    // SUBSCRIBE / DELIVER
    std::string consumer_id;
    std::uint32_t prefetch = 0;

    // ACK / DELIVER
    std::uint64_t delivery_tag = 0;

    // ERR
    std::string code;
    std::string message;

    // STATS_REPLY
    std::uint64_t depth = 0;
    std::uint32_t consumer_count = 0;
    std::uint64_t in_flight = 0;

    bool operator==(const Command&) const = default;
};

// Canonical UTF-8 text for one command: JSON object with alphabetically
// ordered keys, defaults omitted. decode_payload(encode_payload(c)) == c.
std::string encode_payload(const Command& command);

// Throws ProtocolError: "bad_payload" (malformed JSON / wrong field type,
// message carries the byte offset where parsing failed) or "bad_op".
Command decode_payload(std::string_view text);

} // namespace mqga::wire

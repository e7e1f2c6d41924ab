#include "mqga/wire/command.hpp"

#include "json.hpp"

#include "mqga/errors.hpp"
#include "mqga/wire/base64.hpp"

namespace mqga::wire {

namespace {

using nlohmann::json;

constexpr std::pair<Op, std::string_view> kOpNames[] = {
    {Op::Hello, "HELLO"},   {Op::Declare, "DECLARE"},        {Op::Publish, "PUBLISH"},
    {Op::Subscribe, "SUBSCRIBE"}, {Op::Ack, "ACK"},          {Op::Deliver, "DELIVER"},
    {Op::Ok, "OK"},         {Op::Err, "ERR"},                {Op::Stats, "STATS"},
    {Op::StatsReply, "STATS_REPLY"}, {Op::Close, "CLOSE"},
};

template <typename T>
T get_field(const json& j, const char* key, T fallback) {
    const auto it = j.find(key);
    if (it == j.end())
        return fallback;
    if constexpr (std::is_same_v<T, std::string>) {
        if (!it->is_string())
            throw ProtocolError("bad_payload", std::string("field '") + key + "' must be a string");
        return it->get<std::string>();
    } else {
        if (!it->is_number_unsigned())
            throw ProtocolError("bad_payload",
                                std::string("field '") + key + "' must be an unsigned integer");
        return it->get<T>();
    }
}

} // namespace

std::string_view op_name(Op op) {
    for (const auto& [o, name] : kOpNames)
        if (o == op)
            return name;
    return "?";
}

std::optional<Op> op_from_name(std::string_view name) {
    for (const auto& [o, n] : kOpNames)
        if (n == name)
            return o;
    return std::nullopt;
}

std::string encode_payload(const Command& c) {
    json j;
    j["op"] = op_name(c.op);
    if (!c.role.empty())
        j["role"] = c.role;
    if (c.protocol_version != 0)
        j["protocol_version"] = c.protocol_version;
    if (!c.queue.empty())
        j["queue"] = c.queue;
    if (!c.body.empty())
        j["body"] = base64_encode(c.body);
    if (!c.correlation_id.empty())
        j["correlation_id"] = c.correlation_id;
    if (!c.reply_to.empty())
        j["reply_to"] = c.reply_to;
    if (!c.consumer_id.empty())
        j["consumer_id"] = c.consumer_id;
    if (c.prefetch != 0)
        j["prefetch"] = c.prefetch;
    if (c.delivery_tag != 0)
        j["delivery_tag"] = c.delivery_tag;
    if (!c.code.empty())
        j["code"] = c.code;
    if (!c.message.empty())
        j["message"] = c.message;
    if (c.depth != 0)
        j["depth"] = c.depth;
    if (c.consumer_count != 0)
        j["consumer_count"] = c.consumer_count;
    if (c.in_flight != 0)
        j["in_flight"] = c.in_flight;
    return j.dump();
}

Command decode_payload(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ProtocolError("bad_payload", "malformed payload at byte offset " +
                                               std::to_string(e.byte) + ": " + e.what());
    }
    if (!j.is_object())
        throw ProtocolError("bad_payload", "payload must be a JSON object");

    const auto op_it = j.find("op");
    if (op_it == j.end() || !op_it->is_string())
        throw ProtocolError("bad_payload", "missing 'op' field");
    const auto op = op_from_name(op_it->get<std::string>());
    if (!op)
        throw ProtocolError("bad_op", "unknown op '" + op_it->get<std::string>() + "'");

    Command c;
    c.op = *op;
    c.role = get_field<std::string>(j, "role", "");
    c.protocol_version = get_field<std::uint32_t>(j, "protocol_version", 0);
    c.queue = get_field<std::string>(j, "queue", "");
    c.body = base64_decode(get_field<std::string>(j, "body", ""));
    c.correlation_id = get_field<std::string>(j, "correlation_id", "");
    c.reply_to = get_field<std::string>(j, "reply_to", "");
    c.consumer_id = get_field<std::string>(j, "consumer_id", "");
    c.prefetch = get_field<std::uint32_t>(j, "prefetch", 0);
    c.delivery_tag = get_field<std::uint64_t>(j, "delivery_tag", 0);
    c.code = get_field<std::string>(j, "code", "");
    c.message = get_field<std::string>(j, "message", "");
    c.depth = get_field<std::uint64_t>(j, "depth", 0);
    c.consumer_count = get_field<std::uint32_t>(j, "consumer_count", 0);
    c.in_flight = get_field<std::uint64_t>(j, "in_flight", 0);
    return c;
}

} // namespace mqga::wire

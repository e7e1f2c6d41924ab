#include "mqga/wire/client.hpp"

#include "mqga/errors.hpp"
#include "mqga/log.hpp"
#include "mqga/wire/frame.hpp"

namespace mqga::wire {

Client::Client(const std::string& addr, ClientOptions opts)
    : opts_(std::move(opts)), sock_(net::Socket::connect(addr)) {
    reader_ = std::thread([this] { reader_loop(); });
    try {
        Command hello;
        hello.op = Op::Hello;
        hello.role = opts_.role;
        hello.protocol_version = kProtocolVersion;
        rpc(std::move(hello));
    } catch (...) {
        close();
        throw;
    }
}

Client::~Client() {
    close();
}

void Client::close() {
    bool first;
    {
        std::lock_guard lock(mu_);
        first = !closed_;
        fail_locked();
    }
    if (first) {
        // Polite CLOSE, but the socket teardown below is what matters.
        try {
            Command cmd;
            cmd.op = Op::Close;
            std::lock_guard wlock(write_mu_);
            sock_.write_all(encode_frame(cmd));
        } catch (const TransportError&) {
        }
    }
    sock_.shutdown();
    if (reader_.joinable())
        reader_.join();
}

bool Client::connected() const {
    std::lock_guard lock(mu_);
    return !closed_;
}

void Client::fail_locked() {
    closed_ = true;
    reply_cv_.notify_all();
    deliver_cv_.notify_all();
}

void Client::reader_loop() {
    FrameDecoder decoder;
    char buf[16 * 1024];
    try {
        while (true) {
            const std::size_t n = sock_.read_some(buf, sizeof(buf));
            if (n == 0)
                break;
            decoder.feed(std::string_view(buf, n));
            while (auto cmd = decoder.next()) {
                std::lock_guard lock(mu_);
                if (cmd->op == Op::Deliver) {
                    deliveries_.push_back(std::move(*cmd));
                    deliver_cv_.notify_one();
                } else {
                    replies_.push_back(std::move(*cmd));
                    reply_cv_.notify_one();
                }
            }
        }
    } catch (const TransportError&) {
    } catch (const ProtocolError& e) {
        log::warn("client: dropping connection, bad frame from broker: ", e.what());
    }
    std::lock_guard lock(mu_);
    fail_locked();
}

Command Client::rpc(Command cmd) {
    std::lock_guard serial(rpc_mu_);
    {
        std::lock_guard wlock(write_mu_);
        sock_.write_all(encode_frame(cmd));
    }
    std::unique_lock lock(mu_);
    const bool got = reply_cv_.wait_for(lock, opts_.rpc_timeout,
                                        [&] { return closed_ || !replies_.empty(); });
    if (!replies_.empty()) {
        Command reply = std::move(replies_.front());
        replies_.pop_front();
        if (reply.op == Op::Err)
            throw ProtocolError(reply.code, reply.message);
        return reply;
    }
    if (closed_)
        throw TransportError("connection lost");
    // A late reply would desynchronize every later exchange, so a timeout
    // poisons the connection.
    fail_locked();
    (void)got;
    throw TransportError("broker reply timed out");
}

void Client::declare_queue(const std::string& queue) {
    Command cmd;
    cmd.op = Op::Declare;
    cmd.queue = queue;
    rpc(std::move(cmd));
}

void Client::publish(const std::string& queue, std::string body, std::string correlation_id,
                     std::string reply_to) {
    Command cmd;
    cmd.op = Op::Publish;
    cmd.queue = queue;
    cmd.body = std::move(body);
    cmd.correlation_id = std::move(correlation_id);
    cmd.reply_to = std::move(reply_to);
    rpc(std::move(cmd));
}

void Client::subscribe(const std::string& queue, const std::string& consumer_id,
                       std::uint32_t prefetch) {
    Command cmd;
    cmd.op = Op::Subscribe;
    cmd.queue = queue;
    cmd.consumer_id = consumer_id;
    cmd.prefetch = prefetch;
    rpc(std::move(cmd));
}

void Client::ack(std::uint64_t delivery_tag) {
    Command cmd;
    cmd.op = Op::Ack;
    cmd.delivery_tag = delivery_tag;
    rpc(std::move(cmd));
}

QueueInfo Client::stats(const std::string& queue) {
    Command cmd;
    cmd.op = Op::Stats;
    cmd.queue = queue;
    Command reply = rpc(std::move(cmd));
    if (reply.op != Op::StatsReply)
        throw ProtocolError("bad_reply", "expected STATS_REPLY");
    return QueueInfo{reply.depth, reply.consumer_count, reply.in_flight};
}

std::optional<Command> Client::next_delivery(std::chrono::milliseconds timeout) {
    std::unique_lock lock(mu_);
    deliver_cv_.wait_for(lock, timeout, [&] { return closed_ || !deliveries_.empty(); });
    if (!deliveries_.empty()) {
        Command cmd = std::move(deliveries_.front());
        deliveries_.pop_front();
        return cmd;
    }
    if (closed_)
        throw TransportError("connection lost");
    return std::nullopt;
}

} // namespace mqga::wire

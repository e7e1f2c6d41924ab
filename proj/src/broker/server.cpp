#include "mqga/broker/server.hpp"

#include <algorithm>

#include "mqga/errors.hpp"
#include "mqga/log.hpp"
#include "mqga/wire/frame.hpp"

namespace mqga::broker {

using wire::Command;
using wire::Op;

struct Server::Session {
    net::Socket sock;
    ConnectionId conn = 0;
    bool hello_done = false;

    std::mutex out_mu;
    std::condition_variable out_cv;
    std::deque<std::string> outbox;
    bool out_closed = false;

    std::thread reader;
    std::thread writer;

    void enqueue(std::string frame) {
        {
            std::lock_guard lock(out_mu);
            if (out_closed)
                return;
            outbox.push_back(std::move(frame));
        }
        out_cv.notify_one();
    }

    void close_outbox() {
        {
            std::lock_guard lock(out_mu);
            out_closed = true;
        }
        out_cv.notify_one();
    }
};

Server::Server(const std::string& addr) : listener_(addr) {}

Server::~Server() {
    stop();
}

void Server::start() {
    accept_thread_ = std::thread([this] { accept_loop(); });
}

void Server::stop() {
    if (stopping_.exchange(true))
        return;
    listener_.close();
    if (accept_thread_.joinable())
        accept_thread_.join();

    std::vector<std::shared_ptr<Session>> sessions;
    {
        std::lock_guard lock(sessions_mu_);
        sessions.swap(sessions_);
        sessions.insert(sessions.end(), finished_.begin(), finished_.end());
        finished_.clear();
    }
    for (auto& s : sessions)
        s->sock.shutdown(); // unblocks blocked reads and writes
    for (auto& s : sessions) {
        if (s->reader.joinable())
            s->reader.join();
        if (s->writer.joinable())
            s->writer.join();
    }
}

void Server::accept_loop() {
    while (!stopping_.load()) {
        net::Socket sock;
        try {
            sock = listener_.accept();
        } catch (const TransportError&) {
            break; // listener closed
        }
        reap_finished();
        auto session = std::make_shared<Session>();
        session->sock = std::move(sock);
        session->conn =
            core_.attach([session_weak = std::weak_ptr<Session>(session)](const Delivery& d) {
                const auto s = session_weak.lock();
                if (!s)
                    return;
                Command cmd;
                cmd.op = Op::Deliver;
                cmd.queue = d.queue;
                cmd.consumer_id = d.consumer_id;
                cmd.delivery_tag = d.delivery_tag;
                cmd.body = d.body;
                cmd.correlation_id = d.correlation_id;
                cmd.reply_to = d.reply_to;
                s->enqueue(wire::encode_frame(cmd));
            });
        {
            std::lock_guard lock(sessions_mu_);
            sessions_.push_back(session);
        }
        session->writer = std::thread([this, session] { writer_loop(session); });
        session->reader = std::thread([this, session] { session_loop(session); });
    }
}

void Server::writer_loop(const std::shared_ptr<Session>& session) {
    while (true) {
        std::string frame;
        {
            std::unique_lock lock(session->out_mu);
            session->out_cv.wait(lock,
                                 [&] { return session->out_closed || !session->outbox.empty(); });
            if (session->outbox.empty())
                return; // closed and drained
            frame = std::move(session->outbox.front());
            session->outbox.pop_front();
        }
        try {
            session->sock.write_all(frame);
        } catch (const TransportError&) {
            session->sock.shutdown(); // kick the reader as well
            return;
        }
    }
}

void Server::session_loop(const std::shared_ptr<Session>& session) {
    const auto reply_err = [&](const ProtocolError& e) {
        Command err;
        err.op = Op::Err;
        err.code = e.code();
        err.message = e.what();
        session->enqueue(wire::encode_frame(err));
    };

    // Executes one client command; returns false once the session should end.
    const auto handle = [&](Command cmd) -> bool {
        const auto reply_ok = [&] {
            Command ok;
            ok.op = Op::Ok;
            session->enqueue(wire::encode_frame(ok));
        };
        if (!session->hello_done) {
            if (cmd.op != Op::Hello)
                throw ProtocolError("no_handshake", "first command must be HELLO");
            if (cmd.protocol_version != wire::kProtocolVersion)
                throw ProtocolError("version", "unsupported protocol version " +
                                                   std::to_string(cmd.protocol_version));
            session->hello_done = true;
            log::debug("broker: session ", session->conn, " hello, role=", cmd.role);
            reply_ok();
            return true;
        }
        switch (cmd.op) {
        case Op::Declare:
            core_.declare_queue(cmd.queue);
            reply_ok();
            return true;
        case Op::Publish:
            core_.publish(cmd.queue, std::move(cmd.body), std::move(cmd.correlation_id),
                          std::move(cmd.reply_to));
            reply_ok();
            return true;
        case Op::Subscribe:
            core_.subscribe(session->conn, cmd.queue, cmd.consumer_id, cmd.prefetch);
            reply_ok();
            return true;
        case Op::Ack:
            core_.ack(session->conn, cmd.delivery_tag);
            reply_ok();
            return true;
        case Op::Stats: {
            const QueueStats s = core_.stats(cmd.queue);
            Command reply;
            reply.op = Op::StatsReply;
            reply.queue = cmd.queue;
            reply.depth = s.depth;
            reply.consumer_count = s.consumer_count;
            reply.in_flight = s.in_flight_total;
            session->enqueue(wire::encode_frame(reply));
            return true;
        }
        case Op::Close:
            reply_ok();
            return false;
        case Op::Hello:
            throw ProtocolError("bad_op", "HELLO after handshake");
        default:
            // Server-to-client ops arriving inbound are protocol abuse.
            throw ProtocolError("bad_op",
                                std::string("unexpected op ") + std::string(wire::op_name(cmd.op)));
        }
    };

    wire::FrameDecoder decoder;
    char buf[16 * 1024];
    bool open = true;
    try {
        while (open) {
            const std::size_t n = session->sock.read_some(buf, sizeof(buf));
            if (n == 0)
                break;
            decoder.feed(std::string_view(buf, n));
            while (open) {
                // Framing errors are always fatal; command errors may not be.
                auto cmd = decoder.next();
                if (!cmd)
                    break;
                try {
                    open = handle(std::move(*cmd));
                } catch (const ProtocolError& e) {
                    reply_err(e);
                    if (e.fatal()) {
                        log::debug("broker: session ", session->conn,
                                   " protocol error: ", e.what());
                        open = false;
                    }
                }
            }
        }
    } catch (const ProtocolError& e) {
        log::debug("broker: session ", session->conn, " framing error: ", e.what());
        reply_err(e);
    } catch (const TransportError&) {
        // peer went away mid-read
    }

    core_.detach(session->conn);
    // Let queued frames (including a final ERR) drain, then stop the writer.
    session->close_outbox();
    if (session->writer.joinable())
        session->writer.join();
    session->sock.shutdown();
    {
        std::lock_guard lock(sessions_mu_);
        const auto it = std::find(sessions_.begin(), sessions_.end(), session);
        if (it != sessions_.end()) {
            finished_.push_back(*it);
            sessions_.erase(it);
        }
    }
}

void Server::reap_finished() {
    std::vector<std::shared_ptr<Session>> to_reap;
    {
        std::lock_guard lock(sessions_mu_);
        to_reap.swap(finished_);
    }
    for (auto& s : to_reap) {
        if (s->reader.joinable())
            s->reader.join();
        if (s->writer.joinable())
            s->writer.join();
    }
}

} // namespace mqga::broker

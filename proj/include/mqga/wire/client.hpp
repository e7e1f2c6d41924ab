#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "mqga/net/socket.hpp"
#include "mqga/wire/command.hpp"

namespace mqga::wire {

struct ClientOptions {
    std::string role = "client";
    // Upper bound on any single command/reply exchange. Generous because the
    // broker replies as soon as it has parsed the command.
    std::chrono::milliseconds rpc_timeout{10000};
};

struct QueueInfo {
    std::uint64_t depth = 0;
    std::uint64_t consumer_count = 0;
    std::uint64_t in_flight = 0;
};

// Connection to a broker. One background thread reads frames and sorts them
// into command replies and deliveries; user threads issue commands through a
// serialized request/reply exchange, so replies always match requests.
//
// All public methods are thread safe. Command methods throw ProtocolError when
// the broker answers ERR and TransportError when the connection is gone.
class Client {
  public:
    Client(const std::string& addr, ClientOptions opts = {});
    ~Client();
    Client(const Client&) = delete;
    Client& operator=(const Client&) = delete;

    void declare_queue(const std::string& queue);
    void publish(const std::string& queue, std::string body, std::string correlation_id = "",
                 std::string reply_to = "");
    void subscribe(const std::string& queue, const std::string& consumer_id,
                   std::uint32_t prefetch);
    void ack(std::uint64_t delivery_tag);
    QueueInfo stats(const std::string& queue);

    // Next DELIVER frame; nullopt if none arrived within the timeout.
    // Throws TransportError once the connection is lost.
    std::optional<Command> next_delivery(std::chrono::milliseconds timeout);

    // Best-effort CLOSE handshake, then tears the socket down. Idempotent.
    void close();

    bool connected() const;

  private:
    Command rpc(Command cmd);
    void reader_loop();
    void fail_locked(); // requires mu_

    ClientOptions opts_;
    net::Socket sock_;
    std::thread reader_;

    mutable std::mutex mu_;
    std::condition_variable reply_cv_;
    std::condition_variable deliver_cv_;
    std::deque<Command> replies_;
    std::deque<Command> deliveries_;
    bool closed_ = false;

    std::mutex rpc_mu_;   // serializes request/reply exchanges
    std::mutex write_mu_; // serializes raw frame writes
};

} // namespace mqga::wire

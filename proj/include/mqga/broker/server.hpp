#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "mqga/broker/core.hpp"
#include "mqga/net/socket.hpp"

namespace mqga::broker {

// TCP front end for Core. One reader and one writer thread per session;
// all frames leave through the session's outbox so concurrent writers can
// never interleave partial frames.
class Server {
  public:
    // Binds immediately (throws TransportError if the port is busy).
    explicit Server(const std::string& addr);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    void start();
    void stop();

    std::string address() const { return listener_.address(); }
    std::uint16_t port() const { return listener_.port(); }

    Core& core() { return core_; }

  private:
    struct Session;

    void accept_loop();
    void session_loop(const std::shared_ptr<Session>& session);
    void writer_loop(const std::shared_ptr<Session>& session);
    void reap_finished();

    net::Listener listener_;
    Core core_;
    std::atomic<bool> stopping_{false};
    std::thread accept_thread_;

    std::mutex sessions_mu_;
    std::vector<std::shared_ptr<Session>> sessions_;
    std::vector<std::shared_ptr<Session>> finished_;
};

} // namespace mqga::broker

#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace mqga::net {

// "host:port" → (host, port). Throws ConfigError.
std::pair<std::string, std::uint16_t> split_host_port(const std::string& addr);

// Connected TCP stream. Move-only RAII over the fd.
class Socket {
  public:
    Socket() = default;
    explicit Socket(int fd) : fd_(fd) {}
    ~Socket();
    Socket(Socket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
    Socket& operator=(Socket&& other) noexcept;
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;

    static Socket connect(const std::string& addr,
                          std::chrono::milliseconds timeout = std::chrono::milliseconds(3000));

    // Blocking read of up to `n` bytes. Returns 0 on orderly EOF.
    // Throws TransportError on failure.
    std::size_t read_some(char* buf, std::size_t n);

    void write_all(std::string_view bytes);

    // Unblocks any reader/writer on this socket from another thread.
    void shutdown() noexcept;
    void close() noexcept;
    bool valid() const { return fd_ >= 0; }
    int fd() const { return fd_; }

  private:
    int fd_ = -1;
};

// Listening TCP socket. close() unblocks a pending accept().
class Listener {
  public:
    // Binds and listens; port 0 asks the kernel for a free port.
    // Throws TransportError (e.g. address already in use).
    explicit Listener(const std::string& addr);
    ~Listener();
    Listener(const Listener&) = delete;
    Listener& operator=(const Listener&) = delete;

    // Throws TransportError once the listener is closed.
    Socket accept();

    std::uint16_t port() const { return port_; }
    std::string address() const;

    void close() noexcept;

  private:
    int fd_ = -1;
    int wake_pipe_[2] = {-1, -1};
    std::string host_;
    std::uint16_t port_ = 0;
};

} // namespace mqga::net

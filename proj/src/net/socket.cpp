#include "mqga/net/socket.hpp"

#include <arpa/inet.h>
#include <cerrno>
#include <cstring>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include "mqga/errors.hpp"

namespace mqga::net {

namespace {

[[noreturn]] void raise_errno(const std::string& what) {
    throw TransportError(what + ": " + std::strerror(errno));
}

sockaddr_in resolve(const std::string& host, std::uint16_t port) {
    sockaddr_in sa{};
    sa.sin_family = AF_INET;
    sa.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &sa.sin_addr) == 1)
        return sa;
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    if (::getaddrinfo(host.c_str(), nullptr, &hints, &res) != 0 || res == nullptr)
        throw TransportError("cannot resolve host '" + host + "'");
    sa.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
    ::freeaddrinfo(res);
    return sa;
}

void set_nodelay(int fd) {
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

} // namespace

std::pair<std::string, std::uint16_t> split_host_port(const std::string& addr) {
    const auto pos = addr.rfind(':');
    if (pos == std::string::npos || pos == 0 || pos + 1 == addr.size())
        throw ConfigError("address '" + addr + "' is not host:port");
    const std::string host = addr.substr(0, pos);
    const std::string port_str = addr.substr(pos + 1);
    char* end = nullptr;
    const long port = std::strtol(port_str.c_str(), &end, 10);
    if (end == nullptr || *end != '\0' || port < 0 || port > 65535)
        throw ConfigError("invalid port '" + port_str + "' in address '" + addr + "'");
    return {host, static_cast<std::uint16_t>(port)};
}

Socket::~Socket() {
    close();
}

Socket& Socket::operator=(Socket&& other) noexcept {
    if (this != &other) {
        close();
        fd_ = std::exchange(other.fd_, -1);
    }
    return *this;
}

Socket Socket::connect(const std::string& addr, std::chrono::milliseconds timeout) {
    const auto [host, port] = split_host_port(addr);
    const sockaddr_in sa = resolve(host, port);

    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0)
        raise_errno("socket");
    Socket sock(fd);

    const int flags = ::fcntl(fd, F_GETFL, 0);
    ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
    int rc = ::connect(fd, reinterpret_cast<const sockaddr*>(&sa), sizeof(sa));
    if (rc != 0) {
        if (errno != EINPROGRESS)
            raise_errno("connect to " + addr);
        pollfd pfd{fd, POLLOUT, 0};
        rc = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
        if (rc == 0)
            throw TransportError("connect to " + addr + ": timed out");
        if (rc < 0)
            raise_errno("connect to " + addr);
        int err = 0;
        socklen_t len = sizeof(err);
        ::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len);
        if (err != 0)
            throw TransportError("connect to " + addr + ": " + std::strerror(err));
    }
    ::fcntl(fd, F_SETFL, flags);
    set_nodelay(fd);
    return sock;
}

std::size_t Socket::read_some(char* buf, std::size_t n) {
    while (true) {
        const ssize_t rc = ::recv(fd_, buf, n, 0);
        if (rc >= 0)
            return static_cast<std::size_t>(rc);
        if (errno == EINTR)
            continue;
        if (errno == ECONNRESET)
            return 0; // peer vanished: same as EOF for our purposes
        raise_errno("recv");
    }
}

void Socket::write_all(std::string_view bytes) {
    std::size_t off = 0;
    while (off < bytes.size()) {
        const ssize_t rc = ::send(fd_, bytes.data() + off, bytes.size() - off, MSG_NOSIGNAL);
        if (rc < 0) {
            if (errno == EINTR)
                continue;
            raise_errno("send");
        }
        off += static_cast<std::size_t>(rc);
    }
}

void Socket::shutdown() noexcept {
    if (fd_ >= 0)
        ::shutdown(fd_, SHUT_RDWR);
}

void Socket::close() noexcept {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

Listener::Listener(const std::string& addr) {
    const auto [host, port] = split_host_port(addr);
    host_ = host;
    const sockaddr_in sa = resolve(host, port);

    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0)
        raise_errno("socket");
    int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(fd_, reinterpret_cast<const sockaddr*>(&sa), sizeof(sa)) != 0) {
        const int saved = errno;
        ::close(fd_);
        fd_ = -1;
        errno = saved;
        raise_errno("bind " + addr);
    }
    if (::listen(fd_, 64) != 0) {
        ::close(fd_);
        fd_ = -1;
        raise_errno("listen " + addr);
    }
    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
    port_ = ntohs(bound.sin_port);
    if (::pipe(wake_pipe_) != 0)
        raise_errno("pipe");
}

Listener::~Listener() {
    close();
    for (int& fd : wake_pipe_) {
        if (fd >= 0) {
            ::close(fd);
            fd = -1;
        }
    }
}

std::string Listener::address() const {
    return host_ + ":" + std::to_string(port_);
}

Socket Listener::accept() {
    while (true) {
        if (fd_ < 0)
            throw TransportError("listener closed");
        pollfd pfds[2] = {{fd_, POLLIN, 0}, {wake_pipe_[0], POLLIN, 0}};
        const int rc = ::poll(pfds, 2, -1);
        if (rc < 0) {
            if (errno == EINTR)
                continue;
            raise_errno("poll");
        }
        if (pfds[1].revents != 0)
            throw TransportError("listener closed");
        if ((pfds[0].revents & POLLIN) == 0)
            continue;
        const int client = ::accept(fd_, nullptr, nullptr);
        if (client < 0) {
            if (errno == EINTR || errno == ECONNABORTED)
                continue;
            raise_errno("accept");
        }
        set_nodelay(client);
        return Socket(client);
    }
}

void Listener::close() noexcept {
    if (wake_pipe_[1] >= 0) {
        const char b = 0;
        [[maybe_unused]] ssize_t rc = ::write(wake_pipe_[1], &b, 1);
    }
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

} // namespace mqga::net

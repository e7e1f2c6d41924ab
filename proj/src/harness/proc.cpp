#include "mqga/harness/proc.hpp"

#include <algorithm>
#include <cerrno>
#include <csignal>
#include <cstring>
#include <thread>

#include <fcntl.h>
#include <sys/prctl.h>
#include <sys/wait.h>
#include <unistd.h>

#include "mqga/errors.hpp"
#include "mqga/log.hpp"

namespace mqga::harness {

namespace {

// In the child, between fork and exec: only async-signal-safe calls.
void redirect_or_die(const char* path, int target_fd) {
    const int fd = ::open(path, O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd < 0)
        _exit(127);
    if (::dup2(fd, target_fd) < 0)
        _exit(127);
    ::close(fd);
}

} // namespace

ProcessGroup::~ProcessGroup() {
    try {
        terminate_all();
    } catch (...) {
    }
}

pid_t ProcessGroup::spawn(const std::string& name, const std::vector<std::string>& argv,
                          const std::string& stdout_path, const std::string& stderr_path) {
    std::vector<std::string> args = argv;
    std::vector<char*> cargv;
    cargv.push_back(const_cast<char*>("/proc/self/exe"));
    for (auto& a : args)
        cargv.push_back(a.data());
    cargv.push_back(nullptr);

    const pid_t pid = ::fork();
    if (pid < 0)
        throw RunError(std::string("fork failed: ") + std::strerror(errno));
    if (pid == 0) {
        ::prctl(PR_SET_PDEATHSIG, SIGKILL);
        if (::getppid() == 1)
            _exit(127); // parent died in the fork window
        if (!stdout_path.empty())
            redirect_or_die(stdout_path.c_str(), STDOUT_FILENO);
        if (!stderr_path.empty())
            redirect_or_die(stderr_path.c_str(), STDERR_FILENO);
        ::execv("/proc/self/exe", cargv.data());
        _exit(127);
    }
    children_.push_back({pid, name});
    log::debug("spawned ", name, " as pid ", pid);
    return pid;
}

int ProcessGroup::decode_status(int status) {
    if (WIFEXITED(status))
        return WEXITSTATUS(status);
    if (WIFSIGNALED(status))
        return 128 + WTERMSIG(status);
    return 255;
}

void ProcessGroup::forget(pid_t pid) {
    children_.erase(std::remove_if(children_.begin(), children_.end(),
                                   [&](const Child& c) { return c.pid == pid; }),
                    children_.end());
}

std::vector<ProcessGroup::Exit> ProcessGroup::poll_exits() {
    std::vector<Exit> exits;
    for (const auto& child : std::vector<Child>(children_)) {
        int status = 0;
        const pid_t r = ::waitpid(child.pid, &status, WNOHANG);
        if (r == child.pid) {
            exits.push_back({child.pid, child.name, decode_status(status)});
            forget(child.pid);
        }
    }
    return exits;
}

int ProcessGroup::wait(pid_t pid) {
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0) {
        if (errno != EINTR)
            throw RunError(std::string("waitpid failed: ") + std::strerror(errno));
    }
    forget(pid);
    return decode_status(status);
}

bool ProcessGroup::alive(pid_t pid) const {
    return std::any_of(children_.begin(), children_.end(),
                       [&](const Child& c) { return c.pid == pid; });
}

void ProcessGroup::signal(pid_t pid, int sig) {
    ::kill(pid, sig);
}

void ProcessGroup::terminate_all(std::chrono::milliseconds grace) {
    for (const auto& child : children_)
        ::kill(child.pid, SIGTERM);
    const auto deadline = std::chrono::steady_clock::now() + grace;
    while (!children_.empty() && std::chrono::steady_clock::now() < deadline) {
        poll_exits();
        if (children_.empty())
            return;
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    for (const auto& child : children_) {
        log::warn(child.name, " (pid ", child.pid, ") ignored SIGTERM, killing");
        ::kill(child.pid, SIGKILL);
    }
    while (!children_.empty()) {
        int status = 0;
        const pid_t pid = children_.front().pid;
        if (::waitpid(pid, &status, 0) < 0 && errno != EINTR)
            forget(pid); // already reaped elsewhere
        else
            forget(pid);
    }
}

} // namespace mqga::harness

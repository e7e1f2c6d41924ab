#pragma once

#include <chrono>
#include <string>
#include <sys/types.h>
#include <vector>

namespace mqga::harness {

// Children spawned from this binary (re-exec of /proc/self/exe with a
// subcommand). Children get PDEATHSIG so an orchestrator crash can never
// leave orphans behind.
class ProcessGroup {
  public:
    struct Exit {
        pid_t pid = -1;
        std::string name;
        int code = 0; // 128+signal when signal-terminated
    };

    ProcessGroup() = default;
    ~ProcessGroup();
    ProcessGroup(const ProcessGroup&) = delete;
    ProcessGroup& operator=(const ProcessGroup&) = delete;

    // argv excludes argv[0]. Empty capture paths inherit the parent's
    // streams. Throws RunError when the child cannot be started.
    pid_t spawn(const std::string& name, const std::vector<std::string>& argv,
                const std::string& stdout_path = "", const std::string& stderr_path = "");

    // Reaps and returns every child that has exited since the last call.
    std::vector<Exit> poll_exits();

    // Blocks until this child exits; returns its exit code.
    int wait(pid_t pid);

    bool alive(pid_t pid) const;
    void signal(pid_t pid, int sig);

    // SIGTERM everyone, give them `grace`, then SIGKILL the rest. Reaps all.
    void terminate_all(std::chrono::milliseconds grace = std::chrono::milliseconds(2000));

    std::size_t running() const { return children_.size(); }

  private:
    struct Child {
        pid_t pid;
        std::string name;
    };

    static int decode_status(int status);
    void forget(pid_t pid);

    std::vector<Child> children_;
};

} // namespace mqga::harness

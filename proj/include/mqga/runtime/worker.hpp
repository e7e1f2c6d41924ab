#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <string>

namespace mqga::runtime {

// Slave-side loop: take one request at a time (prefetch 1), evaluate, publish
// the response, then ack. Acking only after the response is on the broker is
// what makes a mid-evaluation crash recoverable: the unacked request goes
// back to the queue front and another worker picks it up.
class Worker {
  public:
    struct Options {
        std::string broker_addr;
        std::string worker_id;
        std::string run_id = "run";
        // Consecutive connect failures tolerated before giving up.
        std::chrono::milliseconds connect_patience{60000};
    };

    explicit Worker(Options opts) : opts_(std::move(opts)) {}

    // Runs until stop(); reconnects with exponential backoff (base 100 ms,
    // cap 5 s) on broker loss. Returns 0 on clean stop, 1 when the broker
    // stayed unreachable past connect_patience.
    int run();

    // Safe from a signal handler.
    void stop() { stop_.store(true); }

    std::uint64_t evaluations() const { return evaluations_.load(); }
    std::uint64_t dead_letters() const { return dead_letters_.load(); }

  private:
    // One connection's lifetime; returns when the connection drops or stop()
    // was requested. Sets `subscribed` once the broker accepted us.
    void serve(bool& subscribed);

    Options opts_;
    std::atomic<bool> stop_{false};
    std::atomic<std::uint64_t> evaluations_{0};
    std::atomic<std::uint64_t> dead_letters_{0};
};

} // namespace mqga::runtime

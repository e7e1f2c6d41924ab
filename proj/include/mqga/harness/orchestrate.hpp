#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mqga::harness {

struct LocalOptions {
    std::string config_path;
    // When set, creating this file while the run is live spawns one extra
    // worker per creation (the file is consumed). SIGUSR1 does the same.
    std::string control_file;
    // When set, receives one "name pid" line per spawned child.
    std::string pids_file;
    // Child stdout/stderr capture directory; defaults to the run's temp dir.
    std::string log_dir;
};

// Spawns broker + workers + master as local child processes, supervises them
// until the master finishes, tears everything down, and returns the master's
// exit code. Broker death mid-run is fatal; worker deaths are tolerated (the
// queue contract redistributes their work). Throws ConfigError/RunError.
int run_local(const LocalOptions& opts);

// Async-signal-safe: ask the supervision loop to add one worker.
void request_add_worker();

struct BenchOptions {
    std::string config_path;
    std::vector<std::uint32_t> worker_counts;
    std::string out_path; // bench CSV; empty prints rows to stdout
};

// Repeats the configured run once per worker count with the same seed (so the
// fitness columns must agree and only wall time varies) and reports
// speedup/efficiency against the 1-worker baseline. Returns 0, or 1 when any
// run failed (report marked partial).
int run_bench(const BenchOptions& opts);

} // namespace mqga::harness

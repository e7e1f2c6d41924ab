#include "mqga/harness/orchestrate.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "mqga/errors.hpp"
#include "mqga/harness/config.hpp"
#include "mqga/harness/csv.hpp"
#include "mqga/harness/proc.hpp"
#include "mqga/log.hpp"
#include "mqga/strings.hpp"

namespace mqga::harness {

namespace fs = std::filesystem;
using namespace std::chrono_literals;

namespace {

std::atomic<bool> g_add_worker{false};

fs::path fresh_work_dir(const std::string& tag) {
    static std::atomic<int> counter{0};
    const fs::path dir = fs::temp_directory_path() /
                         ("mqga-" + tag + "-" + std::to_string(::getpid()) + "-" +
                          std::to_string(counter.fetch_add(1)));
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw RunError("cannot write " + path.string());
    out << content;
}

// The broker child prints nothing useful to stdout; it reports its bound
// address through --port-file. Wait for that file to show up.
std::string wait_for_broker(ProcessGroup& procs, pid_t broker, const fs::path& port_file) {
    const auto deadline = std::chrono::steady_clock::now() + 10s;
    while (std::chrono::steady_clock::now() < deadline) {
        for (const auto& e : procs.poll_exits()) {
            if (e.pid == broker)
                throw RunError("broker exited with code " + std::to_string(e.code) +
                               " before binding");
        }
        std::ifstream in(port_file);
        std::string addr;
        if (in && std::getline(in, addr) && !addr.empty())
            return addr;
        std::this_thread::sleep_for(20ms);
    }
    throw RunError("broker did not report an address within 10 s");
}

} // namespace

void request_add_worker() {
    g_add_worker.store(true);
}

int run_local(const LocalOptions& opts) {
    const RunConfig cfg = parse_config(opts.config_path);
    if (cfg.mode != Mode::Distributed)
        throw ConfigError("local orchestration needs mode = distributed");

    const fs::path work = fresh_work_dir("local");
    const fs::path log_dir = opts.log_dir.empty() ? work : fs::path(opts.log_dir);
    fs::create_directories(log_dir);

    ProcessGroup procs;
    std::ofstream pids;
    if (!opts.pids_file.empty()) {
        pids.open(opts.pids_file, std::ios::trunc);
        if (!pids)
            throw ConfigError("cannot open pids file \"" + opts.pids_file + "\"");
    }
    const auto note_pid = [&](const std::string& name, pid_t pid) {
        if (pids.is_open()) {
            pids << name << ' ' << pid << '\n';
            pids.flush();
        }
    };

    const fs::path port_file = work / "broker.port";
    const std::string broker_log = (log_dir / "broker.log").string();
    const pid_t broker = procs.spawn(
        "broker", {"broker", "--addr", "127.0.0.1:0", "--port-file", port_file.string()},
        broker_log, broker_log);
    note_pid("broker", broker);
    const std::string addr = wait_for_broker(procs, broker, port_file);
    log::info("local: broker up at ", addr);

    RunConfig derived = cfg;
    derived.broker_addr = addr;
    if (derived.report_path.empty())
        derived.report_path = (work / "report.csv").string();
    const fs::path master_conf = work / "master.conf";
    write_file(master_conf, emit_config(derived));

    std::uint32_t worker_seq = 0;
    const auto spawn_worker = [&] {
        ++worker_seq;
        const std::string id = "w" + std::to_string(worker_seq);
        const std::string log = (log_dir / (id + ".log")).string();
        const pid_t pid = procs.spawn(
            id, {"worker", "--addr", addr, "--id", id, "--run-id", cfg.run_id}, log, log);
        note_pid(id, pid);
        log::info("local: started worker ", id);
    };
    for (std::uint32_t i = 0; i < cfg.worker_count; ++i)
        spawn_worker();

    const std::string master_log = (log_dir / "master.log").string();
    const pid_t master =
        procs.spawn("master", {"master", "--config", master_conf.string()}, master_log,
                    master_log);
    note_pid("master", master);

    int master_code = -1;
    bool broker_died = false;
    while (master_code < 0) {
        for (const auto& e : procs.poll_exits()) {
            if (e.pid == master) {
                master_code = e.code;
            } else if (e.pid == broker) {
                log::error("local: broker died mid-run (code ", e.code, ")");
                broker_died = true;
            } else {
                // Fault tolerance is the point; a dead worker is survivable.
                log::warn("local: ", e.name, " exited mid-run (code ", e.code, ")");
            }
        }
        if (broker_died)
            break;
        if (master_code >= 0)
            break;
        if (g_add_worker.exchange(false))
            spawn_worker();
        if (!opts.control_file.empty()) {
            std::error_code ec;
            if (fs::exists(opts.control_file, ec)) {
                fs::remove(opts.control_file, ec); // consume the flag
                spawn_worker();
            }
        }
        std::this_thread::sleep_for(25ms);
    }

    procs.terminate_all();
    if (broker_died)
        return 1;
    log::info("local: master finished with code ", master_code);
    return master_code;
}

int run_bench(const BenchOptions& opts) {
    if (opts.worker_counts.empty())
        throw ConfigError("bench needs at least one worker count");
    RunConfig base = parse_config(opts.config_path);
    base.mode = Mode::Distributed;

    const fs::path work = fresh_work_dir("bench");
    std::vector<std::string> rows;
    struct Point {
        std::uint32_t workers;
        double mean_wall_ms;
    };
    std::vector<Point> points;
    bool partial = false;

    for (const std::uint32_t k : opts.worker_counts) {
        RunConfig cfg = base;
        cfg.worker_count = k;
        cfg.report_path = (work / ("report_w" + std::to_string(k) + ".csv")).string();
        const fs::path conf = work / ("bench_w" + std::to_string(k) + ".conf");
        write_file(conf, emit_config(cfg));

        log::info("bench: running with ", k, " worker(s)");
        LocalOptions local;
        local.config_path = conf.string();
        local.log_dir = (work / ("logs_w" + std::to_string(k))).string();
        const int code = run_local(local);
        if (code != 0) {
            log::error("bench: run with ", k, " worker(s) failed (code ", code, ")");
            partial = true;
            continue;
        }

        const CsvTable t = read_csv(cfg.report_path);
        const auto c_gen = t.column("generation");
        const auto c_best = t.column("best");
        const auto c_mean = t.column("mean");
        const auto c_wall = t.column("wall_ms");
        const auto c_dups = t.column("dups");
        const auto c_rep = t.column("republished");
        double wall_sum = 0.0;
        for (const auto& row : t.rows) {
            std::ostringstream line;
            line << k << ',' << row[c_gen] << ',' << row[c_wall] << ',' << row[c_best] << ','
                 << row[c_mean] << ',' << row[c_dups] << ',' << row[c_rep];
            rows.push_back(line.str());
            wall_sum += std::stod(row[c_wall]);
        }
        if (!t.rows.empty())
            points.push_back({k, wall_sum / static_cast<double>(t.rows.size())});
    }

    std::ostringstream csv;
    csv << kBenchCsvHeader << '\n';
    for (const auto& row : rows)
        csv << row << '\n';
    if (opts.out_path.empty())
        std::cout << csv.str();
    else
        write_file(opts.out_path, csv.str());

    const Point* baseline = nullptr;
    for (const auto& p : points)
        if (p.workers == 1)
            baseline = &p;
    if (!baseline && !points.empty()) {
        baseline = &points.front(); // no 1-worker run; scale against the smallest
        std::cout << "# baseline is " << baseline->workers << " workers (no 1-worker run)\n";
    }
    for (const auto& p : points) {
        const double speedup = baseline ? baseline->mean_wall_ms / p.mean_wall_ms : 0.0;
        std::cout << "workers=" << p.workers << " mean_gen_wall_ms=" << p.mean_wall_ms
                  << " speedup=" << speedup << " efficiency=" << speedup / p.workers
                  << (partial ? " (partial)" : "") << '\n';
    }
    return partial ? 1 : 0;
}

} // namespace mqga::harness

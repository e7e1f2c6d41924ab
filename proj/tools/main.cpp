#include <atomic>
#include <csignal>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"

#include "mqga/broker/server.hpp"
#include "mqga/errors.hpp"
#include "mqga/ga/engine.hpp"
#include "mqga/harness/config.hpp"
#include "mqga/harness/csv.hpp"
#include "mqga/harness/orchestrate.hpp"
#include "mqga/log.hpp"
#include "mqga/problems/registry.hpp"
#include "mqga/runtime/evaluator.hpp"
#include "mqga/runtime/worker.hpp"
#include "mqga/strings.hpp"

namespace {

std::atomic<bool> g_stop{false};
mqga::runtime::Worker* g_worker = nullptr;

void handle_stop(int) {
    g_stop.store(true);
    if (g_worker)
        g_worker->stop();
}

void handle_add_worker(int) {
    mqga::harness::request_add_worker();
}

void install_stop_handlers() {
    std::signal(SIGTERM, handle_stop);
    std::signal(SIGINT, handle_stop);
}

std::string default_worker_id() {
    char host[256] = {0};
    ::gethostname(host, sizeof(host) - 1);
    return std::string(host) + "-" + std::to_string(::getpid());
}

std::string genome_text(const mqga::ga::Genome& g) {
    if (g.kind == mqga::ga::GenomeKind::Bitstring) {
        std::string s(g.bits.size(), '0');
        for (std::size_t i = 0; i < g.bits.size(); ++i)
            if (g.bits[i])
                s[i] = '1';
        return s;
    }
    std::string s;
    for (std::size_t i = 0; i < g.reals.size(); ++i) {
        if (i)
            s += ',';
        s += mqga::format_double(g.reals[i]);
    }
    return s;
}

int cmd_broker(const std::string& addr, const std::string& port_file) {
    mqga::broker::Server server(addr);
    server.start();
    if (!port_file.empty()) {
        std::ofstream out(port_file, std::ios::trunc);
        out << server.address() << '\n';
    }
    mqga::log::info("broker: listening on ", server.address());
    install_stop_handlers();
    while (!g_stop.load())
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
    mqga::log::info("broker: stopped");
    return 0;
}

int cmd_worker(const std::string& addr, const std::string& id, const std::string& run_id) {
    mqga::runtime::Worker worker({.broker_addr = addr, .worker_id = id, .run_id = run_id});
    g_worker = &worker;
    install_stop_handlers();
    const int code = worker.run();
    std::cout << "worker " << id << " evaluations=" << worker.evaluations()
              << " dead_letters=" << worker.dead_letters() << std::endl;
    g_worker = nullptr;
    return code;
}

int cmd_master(const std::string& config_path, const std::string& run_id_override) {
    namespace ga = mqga::ga;
    mqga::harness::RunConfig cfg = mqga::harness::parse_config(config_path);
    if (!run_id_override.empty())
        cfg.run_id = run_id_override;

    std::optional<mqga::harness::ReportWriter> writer;
    if (!cfg.report_path.empty())
        writer.emplace(cfg.report_path);
    const ga::GenerationCallback on_generation = [&](const ga::GenerationReport& r) {
        if (writer)
            writer->write(r);
        mqga::log::info("generation ", r.generation, ": best=", r.best_fitness,
                        " mean=", r.mean_fitness, " wall_ms=", r.wall_time.count());
    };

    ga::RunResult result;
    if (cfg.mode == mqga::harness::Mode::Sequential) {
        const auto problem =
            mqga::problems::lookup_problem(cfg.ga.problem_id, cfg.ga.problem_params);
        ga::FunctionEvaluator evaluator(problem.fn);
        result = ga::run_ga(cfg.ga, evaluator, on_generation);
    } else {
        mqga::runtime::DistributedEvaluator evaluator(
            {.broker_addr = cfg.broker_addr, .run_id = cfg.run_id});
        result = ga::run_ga(cfg.ga, evaluator, on_generation);
        for (const auto& [worker_id, count] : evaluator.worker_evaluations())
            std::cout << "worker_evals " << worker_id << "=" << count << '\n';
    }

    std::cout << "run " << cfg.run_id << " best_fitness=" << mqga::format_double(
                     result.best.fitness.value_or(0.0))
              << '\n';
    std::cout << "best_genome " << genome_text(result.best.genome) << std::endl;
    return 0;
}

int cmd_local(const mqga::harness::LocalOptions& opts) {
    std::signal(SIGUSR1, handle_add_worker);
    return mqga::harness::run_local(opts);
}

std::vector<std::uint32_t> parse_worker_counts(const std::string& text) {
    std::vector<std::uint32_t> counts;
    for (const auto& piece : mqga::split(text, ',')) {
        const std::string t(mqga::trim(piece));
        if (t.empty())
            continue;
        std::size_t used = 0;
        const unsigned long v = std::stoul(t, &used);
        if (used != t.size())
            throw mqga::ConfigError("bad worker count \"" + t + "\"");
        counts.push_back(static_cast<std::uint32_t>(v));
    }
    if (counts.empty())
        throw mqga::ConfigError("--workers needs at least one count");
    return counts;
}

} // namespace

int main(int argc, char** argv) {
    mqga::log::init_from_env();

    CLI::App app{"Distributed genetic algorithm over a message queue"};
    app.require_subcommand(1);

    auto* broker = app.add_subcommand("broker", "Run the message broker");
    std::string broker_addr = "127.0.0.1:5672";
    std::string port_file;
    broker->add_option("--addr", broker_addr, "host:port to bind; port 0 picks a free one")
        ->envname("BROKER_ADDR");
    broker->add_option("--port-file", port_file, "write the bound host:port to this file");

    auto* worker = app.add_subcommand("worker", "Run one evaluation worker");
    std::string worker_addr = "127.0.0.1:5672";
    std::string worker_id = "";
    std::string worker_run_id = "";
    std::string worker_config;
    worker->add_option("--addr", worker_addr, "broker host:port")->envname("BROKER_ADDR");
    worker->add_option("--id", worker_id, "worker id (default host-pid)")->envname("WORKER_ID");
    worker->add_option("--run-id", worker_run_id, "run whose queues to serve")
        ->envname("RUN_ID");
    worker->add_option("--config", worker_config,
                       "optional run config; supplies run_id when --run-id is absent");

    auto* master = app.add_subcommand("master", "Run the GA master");
    std::string master_config;
    std::string master_run_id;
    master->add_option("--config", master_config, "run config file")->required();
    master->add_option("--run-id", master_run_id, "override the config's run_id")
        ->envname("RUN_ID");

    auto* local = app.add_subcommand("local", "Run broker, workers and master locally");
    mqga::harness::LocalOptions local_opts;
    local->add_option("--config", local_opts.config_path, "run config file")->required();
    local->add_option("--control-file", local_opts.control_file,
                      "creating this file adds one worker (file is consumed)");
    local->add_option("--pids-file", local_opts.pids_file, "write child pids here");
    local->add_option("--log-dir", local_opts.log_dir, "child log directory");

    auto* bench = app.add_subcommand("bench", "Benchmark across worker counts");
    std::string bench_config;
    std::string bench_workers = "1,2,4";
    std::string bench_out;
    bench->add_option("--config", bench_config, "run config file")->required();
    bench->add_option("--workers", bench_workers, "comma-separated worker counts");
    bench->add_option("--out", bench_out, "bench CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (broker->parsed())
            return cmd_broker(broker_addr, port_file);
        if (worker->parsed()) {
            if (worker_id.empty())
                worker_id = default_worker_id();
            if (worker_run_id.empty() && !worker_config.empty())
                worker_run_id = mqga::harness::parse_config(worker_config).run_id;
            if (worker_run_id.empty())
                worker_run_id = "run";
            return cmd_worker(worker_addr, worker_id, worker_run_id);
        }
        if (master->parsed())
            return cmd_master(master_config, master_run_id);
        if (local->parsed())
            return cmd_local(local_opts);
        if (bench->parsed())
            return mqga::harness::run_bench(
                {bench_config, parse_worker_counts(bench_workers), bench_out});
    } catch (const mqga::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2; // no subcommand dispatched
}

#include "mqga/runtime/worker.hpp"

#include <algorithm>
#include <thread>

#include "mqga/errors.hpp"
#include "mqga/log.hpp"
#include "mqga/problems/registry.hpp"
#include "mqga/runtime/messages.hpp"
#include "mqga/wire/client.hpp"

namespace mqga::runtime {

using Clock = std::chrono::steady_clock;

void Worker::serve(bool& subscribed) {
    wire::Client client(opts_.broker_addr, {.role = "worker"});
    const std::string req_q = request_queue(opts_.run_id);
    client.declare_queue(req_q);
    client.subscribe(req_q, opts_.worker_id, 1);
    subscribed = true;
    log::info("worker ", opts_.worker_id, ": subscribed to ", req_q);

    while (!stop_.load()) {
        const auto delivery = client.next_delivery(std::chrono::milliseconds(200));
        if (!delivery)
            continue;

        EvalRequest req;
        try {
            req = decode_request(delivery->body);
        } catch (const ProtocolError& e) {
            // Poisoned request: answering is impossible, requeueing would
            // loop it forever. Drop it and let the master's timeout surface
            // the problem.
            log::warn("worker ", opts_.worker_id, ": dead-lettering request: ", e.what());
            dead_letters_.fetch_add(1);
            client.ack(delivery->delivery_tag);
            continue;
        }

        ga::FitnessFn fn;
        try {
            fn = problems::lookup_problem(req.problem_id, req.problem_params).fn;
        } catch (const ConfigError& e) {
            log::warn("worker ", opts_.worker_id, ": dead-lettering request: ", e.what());
            dead_letters_.fetch_add(1);
            client.ack(delivery->delivery_tag);
            continue;
        }

        const auto t0 = Clock::now();
        const double fitness = fn(req.genome);
        const auto elapsed =
            std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);

        EvalResponse resp;
        resp.run_id = req.run_id;
        resp.generation = req.generation;
        resp.index = req.index;
        resp.fitness = fitness;
        resp.worker_id = opts_.worker_id;
        resp.eval_duration = elapsed;
        resp.attempt = req.attempt;

        const std::string reply_to =
            delivery->reply_to.empty() ? response_queue(req.run_id) : delivery->reply_to;
        client.publish(reply_to, encode_response(resp),
                       make_correlation(resp.run_id, resp.generation, resp.index));
        client.ack(delivery->delivery_tag); // strictly after the response
        evaluations_.fetch_add(1);
        log::debug("worker ", opts_.worker_id, ": evaluated ", resp.run_id, ":",
                   resp.generation, ":", resp.index, " -> ", fitness);
    }
}

int Worker::run() {
    auto backoff = std::chrono::milliseconds(100);
    constexpr auto kBackoffCap = std::chrono::milliseconds(5000);
    auto failures_since = Clock::time_point{};
    bool failing = false;

    while (!stop_.load()) {
        bool subscribed = false;
        try {
            serve(subscribed);
            return 0; // stop() requested while serving
        } catch (const TransportError& e) {
            log::warn("worker ", opts_.worker_id, ": connection lost: ", e.what());
        } catch (const ProtocolError& e) {
            log::warn("worker ", opts_.worker_id, ": broker refused us: ", e.what());
        }
        if (subscribed) {
            // The patience window measures consecutive failures only.
            failing = false;
            backoff = std::chrono::milliseconds(100);
        }
        const auto now = Clock::now();
        if (!failing) {
            failing = true;
            failures_since = now;
        } else if (now - failures_since >= opts_.connect_patience) {
            log::error("worker ", opts_.worker_id, ": broker unreachable for too long");
            return 1;
        }
        std::this_thread::sleep_for(backoff);
        backoff = std::min(backoff * 2, kBackoffCap);
    }
    return 0;
}

} // namespace mqga::runtime

#include "mqga/runtime/evaluator.hpp"

#include <algorithm>
#include <vector>

#include "mqga/errors.hpp"
#include "mqga/log.hpp"
#include "mqga/runtime/messages.hpp"
#include "mqga/runtime/scatter.hpp"

namespace mqga::runtime {

using Clock = std::chrono::steady_clock;

DistributedEvaluator::DistributedEvaluator(Options opts)
    : opts_(std::move(opts)), client_(opts_.broker_addr, {.role = "master"}) {
    client_.declare_queue(request_queue(opts_.run_id));
    client_.declare_queue(response_queue(opts_.run_id));
}

ga::EvalStats DistributedEvaluator::evaluate_all(ga::Population& pop,
                                                 const ga::GaConfig& config) {
    ga::EvalStats stats;
    std::vector<std::uint32_t> todo;
    for (const auto& m : pop.members)
        if (!m.fitness)
            todo.push_back(m.id);
    if (todo.empty())
        return stats;

    const std::string req_q = request_queue(opts_.run_id);
    const std::string resp_q = response_queue(opts_.run_id);

    try {
        if (!subscribed_) {
            // Prefetch covers a full generation so the broker never has to
            // wait for our acks mid-gather.
            client_.subscribe(resp_q, "master", config.population_size);
            subscribed_ = true;
        }
        if (const auto info = client_.stats(resp_q); info.consumer_count != 1)
            throw RunError("response queue has " + std::to_string(info.consumer_count) +
                           " consumers; the master must be the only one");

        ScatterState state;
        state.run_id = opts_.run_id;
        state.generation = pop.generation;
        std::map<std::uint32_t, std::uint32_t> published_attempt;

        const auto publish_one = [&](std::uint32_t idx, std::uint32_t attempt) {
            EvalRequest req;
            req.run_id = opts_.run_id;
            req.generation = pop.generation;
            req.index = idx;
            req.genome = pop.members[idx].genome;
            req.problem_id = config.problem_id;
            req.problem_params = config.problem_params;
            req.attempt = attempt;
            client_.publish(req_q, encode_request(req),
                            make_correlation(opts_.run_id, pop.generation, idx), resp_q);
            published_attempt[idx] = attempt;
        };

        for (const auto idx : todo)
            state.outstanding.insert(idx);
        for (const auto idx : todo)
            publish_one(idx, 1);
        state.deadline = Clock::now() + config.generation_timeout;

        while (!state.outstanding.empty()) {
            if (Clock::now() >= state.deadline) {
                if (state.republish_count >= opts_.max_republish)
                    throw RunError("evaluation stalled: " +
                                   std::to_string(state.outstanding.size()) +
                                   " evaluations missing after " +
                                   std::to_string(state.republish_count) +
                                   " republish rounds");
                ++state.republish_count;
                log::warn("scatter: generation ", state.generation, " timed out, republishing ",
                          state.outstanding.size(), " requests (round ", state.republish_count,
                          ")");
                for (const auto idx : state.outstanding) {
                    publish_one(idx, published_attempt[idx] + 1);
                    ++stats.republished;
                }
                state.deadline = Clock::now() + config.generation_timeout;
            }

            const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
                state.deadline - Clock::now());
            const auto slice = std::clamp(remaining, std::chrono::milliseconds(0),
                                          std::chrono::milliseconds(100));
            const auto delivery = client_.next_delivery(slice);
            if (!delivery)
                continue;

            EvalResponse resp;
            try {
                resp = decode_response(delivery->body);
            } catch (const ProtocolError& e) {
                log::warn("scatter: undecodable response dropped: ", e.what());
                client_.ack(delivery->delivery_tag);
                ++stats.stale;
                continue;
            }
            const Verdict verdict = dedup_accept(state, resp);
            client_.ack(delivery->delivery_tag);
            switch (verdict) {
            case Verdict::Accepted: {
                ++stats.evaluated;
                ++worker_evals_[resp.worker_id];
                const auto it = published_attempt.find(resp.index);
                if (it != published_attempt.end() && resp.attempt > it->second)
                    log::warn("scatter: response attempt ", resp.attempt,
                              " exceeds published attempt ", it->second, " for index ",
                              resp.index);
                break;
            }
            case Verdict::Duplicate:
                ++stats.duplicates;
                break;
            case Verdict::Stale:
                ++stats.stale;
                break;
            }
        }

        for (const auto& [idx, fitness] : state.received)
            pop.members[idx].fitness = fitness;
        return stats;
    } catch (const TransportError& e) {
        throw RunError(std::string("broker connection lost: ") + e.what());
    }
}

} // namespace mqga::runtime

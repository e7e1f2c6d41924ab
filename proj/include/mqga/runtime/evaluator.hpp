#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "mqga/ga/evaluator.hpp"
#include "mqga/wire/client.hpp"

namespace mqga::runtime {

// Master-side evaluator: scatters one request per unevaluated member onto
// the run's request queue, gathers responses from the response queue, and
// enforces the generation barrier. Redeliveries and republishes are
// deduplicated, so each (generation, index) contributes exactly one fitness.
class DistributedEvaluator final : public ga::Evaluator {
  public:
    struct Options {
        std::string broker_addr;
        std::string run_id = "run";
        std::uint32_t max_republish = 5;
    };

    // Connects and declares both queues; throws TransportError when the
    // broker is unreachable.
    explicit DistributedEvaluator(Options opts);

    // Generation barrier. Throws RunError("evaluation stalled") once
    // config.generation_timeout passed max_republish+1 times with answers
    // still missing.
    ga::EvalStats evaluate_all(ga::Population& pop, const ga::GaConfig& config) override;

    // Accepted responses per worker_id, across the whole run so far.
    const std::map<std::string, std::uint64_t>& worker_evaluations() const {
        return worker_evals_;
    }

  private:
    Options opts_;
    wire::Client client_;
    bool subscribed_ = false;
    std::map<std::string, std::uint64_t> worker_evals_;
};

} // namespace mqga::runtime

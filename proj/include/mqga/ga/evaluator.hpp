#pragma once

#include <cstdint>
#include <functional>

#include "mqga/ga/config.hpp"
#include "mqga/ga/genome.hpp"

namespace mqga::ga {

struct EvalStats {
    std::uint64_t evaluated = 0;   // fresh fitness values produced
    std::uint64_t duplicates = 0;  // redelivered answers discarded
    std::uint64_t republished = 0; // timeout-driven re-requests
    std::uint64_t stale = 0;       // stragglers from earlier generations

    EvalStats& operator+=(const EvalStats& o) {
        evaluated += o.evaluated;
        duplicates += o.duplicates;
        republished += o.republished;
        stale += o.stale;
        return *this;
    }
};

// The scatter/gather seam. evaluate_all must fill a fitness for every member
// that lacks one and leave already-evaluated members untouched. The engine
// never cares whether that happens in-process or across a worker fleet.
class Evaluator {
  public:
    virtual ~Evaluator() = default;
    virtual EvalStats evaluate_all(Population& pop, const GaConfig& config) = 0;
};

using FitnessFn = std::function<double(const Genome&)>;

// In-process evaluator: applies a pure fitness function member by member in
// id order. This is the sequential oracle the distributed path is measured
// against.
class FunctionEvaluator final : public Evaluator {
  public:
    explicit FunctionEvaluator(FitnessFn fn) : fn_(std::move(fn)) {}
    EvalStats evaluate_all(Population& pop, const GaConfig& config) override;

  private:
    FitnessFn fn_;
};

} // namespace mqga::ga

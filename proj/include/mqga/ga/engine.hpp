#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "mqga/ga/config.hpp"
#include "mqga/ga/evaluator.hpp"
#include "mqga/ga/genome.hpp"
#include "mqga/ga/operators.hpp"
#include "mqga/ga/report.hpp"
#include "mqga/ga/rng.hpp"

namespace mqga::ga {

struct RunResult {
    Individual best; // best evaluated individual seen across the run
    std::vector<GenerationReport> reports;
};

using GenerationCallback = std::function<void(const GenerationReport&)>;

// One generation: evaluation barrier, then selection, crossover, mutation,
// elitism. Operator randomness is drawn in id order strictly after the
// barrier, so the trajectory never depends on evaluation arrival order.
// Returns the next (mostly unevaluated) population and the report for the
// generation that was just evaluated.
std::pair<Population, GenerationReport> evolve_generation(Population pop, const GaConfig& config,
                                                          Evaluator& evaluator, Rng& rng);

// Full run: init, then exactly max_generations generations (the budget is the
// only stop criterion). on_generation, when set, fires after each report; a
// run aborted by an evaluator error rethrows after the callback has seen all
// completed generations.
RunResult run_ga(const GaConfig& config, Evaluator& evaluator,
                 const GenerationCallback& on_generation = {});

} // namespace mqga::ga

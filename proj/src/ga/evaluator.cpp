#include "mqga/ga/evaluator.hpp"

#include <cmath>

#include "mqga/errors.hpp"

namespace mqga::ga {

EvalStats FunctionEvaluator::evaluate_all(Population& pop, const GaConfig& /*config*/) {
    EvalStats stats;
    for (auto& ind : pop.members) {
        if (ind.fitness)
            continue;
        const double f = fn_(ind.genome);
        if (!std::isfinite(f))
            throw RunError("fitness function returned a non-finite value");
        ind.fitness = f;
        ++stats.evaluated;
    }
    return stats;
}

} // namespace mqga::ga

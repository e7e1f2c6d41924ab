#include "mqga/ga/engine.hpp"

#include <chrono>

#include "mqga/errors.hpp"

namespace mqga::ga {

namespace {

struct StepOutcome {
    Population next;
    GenerationReport report;
    Individual best; // of the evaluated population
};

StepOutcome step(Population pop, const GaConfig& config, Evaluator& evaluator, Rng& rng) {
    const auto t0 = std::chrono::steady_clock::now();

    const EvalStats stats = evaluator.evaluate_all(pop, config);

    double sum = 0.0;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < pop.members.size(); ++i) {
        const auto& f = pop.members[i].fitness;
        if (!f)
            throw InternalError("member unevaluated after evaluation barrier");
        sum += *f;
        if (i > 0 && better(*f, *pop.members[best_idx].fitness, config.maximize))
            best_idx = i;
    }

    // Offspring are built pair by pair; every draw below happens on the one
    // master Rng, after the barrier, in a fixed order.
    std::vector<Genome> offspring;
    const std::size_t wanted = pop.members.size() - config.elite_count;
    offspring.reserve(wanted);
    while (offspring.size() < wanted) {
        const Individual p1 = tournament_select(pop, config, rng);
        const Individual p2 = tournament_select(pop, config, rng);
        auto [c1, c2] = crossover(p1, p2, config, rng);
        offspring.push_back(mutate(c1, config, rng));
        if (offspring.size() < wanted)
            offspring.push_back(mutate(c2, config, rng));
        // else: odd count, the pair's second child is dropped unmutated
    }

    StepOutcome out;
    out.best = pop.members[best_idx];
    out.report.generation = pop.generation;
    out.report.best_fitness = *pop.members[best_idx].fitness;
    out.report.mean_fitness = sum / static_cast<double>(pop.members.size());
    out.report.evaluations_performed = stats.evaluated;
    out.report.duplicate_responses = stats.duplicates;
    out.report.republished_requests = stats.republished;
    out.next = apply_elitism(pop, std::move(offspring), config);
    out.report.wall_time = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - t0);
    return out;
}

} // namespace

std::pair<Population, GenerationReport> evolve_generation(Population pop, const GaConfig& config,
                                                          Evaluator& evaluator, Rng& rng) {
    auto out = step(std::move(pop), config, evaluator, rng);
    return {std::move(out.next), out.report};
}

RunResult run_ga(const GaConfig& config, Evaluator& evaluator,
                 const GenerationCallback& on_generation) {
    validate(config);
    Rng rng(config.seed);
    Population pop = init_population(config, rng);

    RunResult result;
    result.reports.reserve(config.max_generations);
    bool have_best = false;
    for (std::uint32_t g = 0; g < config.max_generations; ++g) {
        auto out = step(std::move(pop), config, evaluator, rng);
        pop = std::move(out.next);
        result.reports.push_back(out.report);
        if (!have_best ||
            better(*out.best.fitness, *result.best.fitness, config.maximize)) {
            result.best = std::move(out.best);
            have_best = true;
        }
        if (on_generation)
            on_generation(result.reports.back());
    }
    return result;
}

} // namespace mqga::ga

#include "mqga/ga/config.hpp"

#include <cmath>

#include "mqga/errors.hpp"

namespace mqga::ga {

void validate(const GaConfig& c) {
    if (c.population_size < 2)
        throw ConfigError("population_size must be >= 2");
    if (c.genome_length < 1)
        throw ConfigError("genome_length must be >= 1");
    if (c.max_generations < 1)
        throw ConfigError("max_generations must be >= 1");
    if (!(c.crossover_rate >= 0.0 && c.crossover_rate <= 1.0))
        throw ConfigError("crossover_rate must be in [0,1]");
    if (!(c.mutation_rate >= 0.0 && c.mutation_rate <= 1.0))
        throw ConfigError("mutation_rate must be in [0,1]");
    if (c.tournament_size < 1 || c.tournament_size > c.population_size)
        throw ConfigError("tournament_size must be in [1, population_size]");
    if (c.elite_count >= c.population_size)
        throw ConfigError("elite_count must be < population_size");
    if (c.problem_id.empty())
        throw ConfigError("problem_id must be set");
    if (c.generation_timeout.count() <= 0)
        throw ConfigError("generation_timeout must be positive");
    if (c.genome_kind == GenomeKind::RealVector) {
        if (!std::isfinite(c.bound_low) || !std::isfinite(c.bound_high) ||
            !(c.bound_low < c.bound_high))
            throw ConfigError("real genomes need bound_low < bound_high");
    }
}

} // namespace mqga::ga

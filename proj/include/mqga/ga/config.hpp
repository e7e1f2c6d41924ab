#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <string>

#include "mqga/ga/genome.hpp"

namespace mqga::ga {

struct GaConfig {
    std::uint32_t population_size = 0; // >= 2
    GenomeKind genome_kind = GenomeKind::Bitstring;
    std::uint32_t genome_length = 0; // >= 1
    std::uint32_t max_generations = 1;
    double crossover_rate = 0.9;  // in [0,1]
    double mutation_rate = 0.0;   // in [0,1]
    std::uint32_t tournament_size = 3; // in [1, population_size]
    std::uint32_t elite_count = 1;     // in [0, population_size)
    std::string problem_id;
    std::map<std::string, double> problem_params;
    std::uint64_t seed = 0;
    std::chrono::milliseconds generation_timeout{10000};
    bool maximize = true;

    // Coordinate bounds for RealVector genomes, resolved from the problem
    // registry when the config is built so this module stays independent of
    // the problem catalog.
    double bound_low = 0.0;
    double bound_high = 0.0;

    bool operator==(const GaConfig&) const = default;
};

// Range-checks every field; throws ConfigError naming the offending field.
void validate(const GaConfig& config);

} // namespace mqga::ga

#pragma once

#include <utility>
#include <vector>

#include "mqga/ga/config.hpp"
#include "mqga/ga/genome.hpp"
#include "mqga/ga/rng.hpp"

namespace mqga::ga {

// True when fitness a beats fitness b under the run's direction.
inline bool better(double a, double b, bool maximize) {
    return maximize ? a > b : a < b;
}

// Generation 0: uniform random genomes, ids 0..population_size-1, no fitness.
// Bitstrings draw each bit uniformly; real vectors draw each coordinate
// uniformly within [bound_low, bound_high].
Population init_population(const GaConfig& config, Rng& rng);

// Draws tournament_size members uniformly with replacement and returns the
// best; equal fitness resolves to the lower id. All members must be
// evaluated.
Individual tournament_select(const Population& pop, const GaConfig& config, Rng& rng);

// With probability crossover_rate recombines the parents, otherwise returns
// plain copies. Bitstrings use a single cut point from [1, L-1]; real
// vectors swap each coordinate with probability 0.5.
std::pair<Genome, Genome> crossover(const Individual& a, const Individual& b,
                                    const GaConfig& config, Rng& rng);

// Deterministic single-point recombination at a fixed cut; exposed so the
// cut mechanics can be pinned down without involving an Rng.
std::pair<Genome, Genome> single_point_cross(const Genome& a, const Genome& b, std::size_t cut);

// Per-bit flip with probability mutation_rate, or per-coordinate Gaussian
// perturbation (sigma = problem_params["mutation_sigma"], default one tenth
// of the bound width) clamped back into bounds.
Genome mutate(const Genome& g, const GaConfig& config, Rng& rng);

// Next generation = best elite_count of the old population (best first,
// fitness kept) followed by the offspring, ids reassigned from 0.
// offspring.size() must equal population_size - elite_count.
Population apply_elitism(const Population& evaluated_old, std::vector<Genome> offspring,
                         const GaConfig& config);

} // namespace mqga::ga

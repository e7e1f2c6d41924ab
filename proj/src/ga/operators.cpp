#include "mqga/ga/operators.hpp"

#include <algorithm>
#include <numeric>

#include "mqga/errors.hpp"

namespace mqga::ga {

Population init_population(const GaConfig& config, Rng& rng) {
    validate(config);
    Population pop;
    pop.generation = 0;
    pop.members.resize(config.population_size);
    for (std::uint32_t i = 0; i < config.population_size; ++i) {
        Individual& ind = pop.members[i];
        ind.id = i;
        ind.genome.kind = config.genome_kind;
        if (config.genome_kind == GenomeKind::Bitstring) {
            ind.genome.bits.resize(config.genome_length);
            for (auto& b : ind.genome.bits)
                b = static_cast<std::uint8_t>(rng.below(2));
        } else {
            ind.genome.reals.resize(config.genome_length);
            for (auto& x : ind.genome.reals)
                x = rng.uniform(config.bound_low, config.bound_high);
        }
    }
    return pop;
}

Individual tournament_select(const Population& pop, const GaConfig& config, Rng& rng) {
    const auto fitness_of = [&](std::size_t idx) -> double {
        const auto& f = pop.members[idx].fitness;
        if (!f)
            throw InternalError("tournament on unevaluated member");
        return *f;
    };
    std::size_t best = static_cast<std::size_t>(rng.below(pop.members.size()));
    double best_fit = fitness_of(best);
    for (std::uint32_t t = 1; t < config.tournament_size; ++t) {
        const std::size_t cand = static_cast<std::size_t>(rng.below(pop.members.size()));
        const double cand_fit = fitness_of(cand);
        if (better(cand_fit, best_fit, config.maximize) || (cand_fit == best_fit && cand < best)) {
            best = cand;
            best_fit = cand_fit;
        }
    }
    return pop.members[best];
}

std::pair<Genome, Genome> single_point_cross(const Genome& a, const Genome& b, std::size_t cut) {
    if (a.kind != GenomeKind::Bitstring || b.kind != GenomeKind::Bitstring)
        throw InternalError("single-point crossover is for bitstrings");
    if (a.bits.size() != b.bits.size())
        throw InternalError("crossover on mismatched lengths");
    if (cut < 1 || cut >= a.bits.size())
        throw InternalError("cut point outside [1, L-1]");
    Genome c1 = a;
    Genome c2 = b;
    for (std::size_t i = cut; i < a.bits.size(); ++i) {
        c1.bits[i] = b.bits[i];
        c2.bits[i] = a.bits[i];
    }
    return {std::move(c1), std::move(c2)};
}

std::pair<Genome, Genome> crossover(const Individual& a, const Individual& b,
                                    const GaConfig& config, Rng& rng) {
    const Genome& ga = a.genome;
    const Genome& gb = b.genome;
    if (ga.kind != gb.kind || ga.length() != gb.length())
        throw InternalError("crossover on mismatched genomes");
    if (!rng.chance(config.crossover_rate))
        return {ga, gb};
    if (ga.kind == GenomeKind::Bitstring) {
        const std::size_t len = ga.bits.size();
        if (len < 2)
            return {ga, gb}; // no interior cut exists
        const std::size_t cut = 1 + static_cast<std::size_t>(rng.below(len - 1));
        return single_point_cross(ga, gb, cut);
    }
    Genome c1 = ga;
    Genome c2 = gb;
    for (std::size_t i = 0; i < c1.reals.size(); ++i) {
        if (rng.chance(0.5))
            std::swap(c1.reals[i], c2.reals[i]);
    }
    return {std::move(c1), std::move(c2)};
}

Genome mutate(const Genome& g, const GaConfig& config, Rng& rng) {
    Genome out = g;
    if (out.kind == GenomeKind::Bitstring) {
        for (auto& b : out.bits) {
            if (rng.chance(config.mutation_rate))
                b ^= 1u;
        }
        return out;
    }
    double sigma = 0.1 * (config.bound_high - config.bound_low);
    if (const auto it = config.problem_params.find("mutation_sigma");
        it != config.problem_params.end())
        sigma = it->second;
    for (auto& x : out.reals) {
        if (rng.chance(config.mutation_rate)) {
            x = rng.gaussian(x, sigma);
            x = std::clamp(x, config.bound_low, config.bound_high);
        }
    }
    return out;
}

Population apply_elitism(const Population& evaluated_old, std::vector<Genome> offspring,
                         const GaConfig& config) {
    const std::size_t n = evaluated_old.members.size();
    if (offspring.size() + config.elite_count != n)
        throw InternalError("offspring count does not fill the population");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
        const auto& a = evaluated_old.members[lhs];
        const auto& b = evaluated_old.members[rhs];
        if (!a.fitness || !b.fitness)
            throw InternalError("elitism on unevaluated member");
        if (*a.fitness != *b.fitness)
            return better(*a.fitness, *b.fitness, config.maximize);
        return a.id < b.id;
    });

    Population next;
    next.generation = evaluated_old.generation + 1;
    next.members.reserve(n);
    for (std::uint32_t e = 0; e < config.elite_count; ++e) {
        Individual elite = evaluated_old.members[order[e]]; // fitness kept
        elite.id = e;
        next.members.push_back(std::move(elite));
    }
    std::uint32_t id = config.elite_count;
    for (auto& genome : offspring) {
        Individual child;
        child.genome = std::move(genome);
        child.id = id++;
        next.members.push_back(std::move(child));
    }
    return next;
}

} // namespace mqga::ga

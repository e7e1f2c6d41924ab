#pragma once

#include <map>
#include <string>
#include <vector>

#include "mqga/ga/evaluator.hpp"
#include "mqga/ga/genome.hpp"

namespace mqga::problems {

struct Bounds {
    double low = 0.0;
    double high = 0.0;
};

struct ProblemSpec {
    std::string problem_id;
    ga::GenomeKind genome_kind = ga::GenomeKind::Bitstring;
    bool maximize = true;
    bool has_bounds = false;
    Bounds bounds;
    std::map<std::string, double> params; // resolved, defaults applied
};

struct Problem {
    ProblemSpec spec;
    ga::FitnessFn fn; // pure; any requested delay is folded in
};

// Raw benchmark functions.
double onemax(const ga::Genome& g);             // bitstring, maximize
double sphere(const ga::Genome& g);             // real vector, minimize
double rastrigin(const ga::Genome& g, double a); // real vector, minimize

// Resolves a problem id plus caller params into a ready-to-call evaluation
// function. Params understood everywhere: delay_ms (sleep before evaluating,
// for load emulation), busy_spin (nonzero burns CPU instead of sleeping).
// rastrigin additionally takes A (default 10). Same id and params produce
// extensionally identical functions. Unknown id throws ConfigError.
Problem lookup_problem(const std::string& problem_id,
                       const std::map<std::string, double>& params = {});

std::vector<std::string> registered_ids();

} // namespace mqga::problems

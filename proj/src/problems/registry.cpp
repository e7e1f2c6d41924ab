#include "mqga/problems/registry.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <thread>

#include "mqga/errors.hpp"

namespace mqga::problems {

namespace {

void require_kind(const ga::Genome& g, ga::GenomeKind kind, const char* fn_name) {
    if (g.kind != kind)
        throw TypeError(std::string(fn_name) + " expects a " + ga::genome_kind_name(kind) +
                        " genome, got " + ga::genome_kind_name(g.kind));
}

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void burn(std::chrono::milliseconds amount) {
    const auto until = std::chrono::steady_clock::now() + amount;
    while (std::chrono::steady_clock::now() < until) {
        // deliberate spin; load emulation where sleeping would hide
        // scheduler effects
    }
}

// Wraps fn with the shared delay knobs. delay_ms sleeps by default so a
// single machine can still host many "busy" workers; busy_spin makes the
// cost real CPU time instead.
ga::FitnessFn with_delay(ga::FitnessFn fn, const std::map<std::string, double>& params) {
    const double delay_ms = param_or(params, "delay_ms", 0.0);
    if (delay_ms < 0.0)
        throw ConfigError("delay_ms must be >= 0");
    if (delay_ms == 0.0)
        return fn;
    const bool spin = param_or(params, "busy_spin", 0.0) != 0.0;
    const auto amount =
        std::chrono::milliseconds(static_cast<std::int64_t>(delay_ms));
    return [fn = std::move(fn), amount, spin](const ga::Genome& g) {
        if (spin)
            burn(amount);
        else
            std::this_thread::sleep_for(amount);
        return fn(g);
    };
}

constexpr Bounds kDefaultRealBounds{-5.12, 5.12};

} // namespace

double onemax(const ga::Genome& g) {
    require_kind(g, ga::GenomeKind::Bitstring, "onemax");
    double ones = 0.0;
    for (const auto b : g.bits)
        ones += b;
    return ones;
}

double sphere(const ga::Genome& g) {
    require_kind(g, ga::GenomeKind::RealVector, "sphere");
    double sum = 0.0;
    for (const auto x : g.reals)
        sum += x * x;
    return sum;
}

double rastrigin(const ga::Genome& g, double a) {
    require_kind(g, ga::GenomeKind::RealVector, "rastrigin");
    double sum = a * static_cast<double>(g.reals.size());
    for (const auto x : g.reals)
        sum += x * x - a * std::cos(2.0 * std::numbers::pi * x);
    return sum;
}

Problem lookup_problem(const std::string& problem_id,
                       const std::map<std::string, double>& params) {
    Problem p;
    p.spec.problem_id = problem_id;
    p.spec.params = params;
    if (problem_id == "onemax") {
        p.spec.genome_kind = ga::GenomeKind::Bitstring;
        p.spec.maximize = true;
        p.fn = with_delay(onemax, params);
        return p;
    }
    if (problem_id == "sphere") {
        p.spec.genome_kind = ga::GenomeKind::RealVector;
        p.spec.maximize = false;
        p.spec.has_bounds = true;
        p.spec.bounds = kDefaultRealBounds;
        p.fn = with_delay(sphere, params);
        return p;
    }
    if (problem_id == "rastrigin") {
        p.spec.genome_kind = ga::GenomeKind::RealVector;
        p.spec.maximize = false;
        p.spec.has_bounds = true;
        p.spec.bounds = kDefaultRealBounds;
        const double a = param_or(params, "A", 10.0);
        p.spec.params["A"] = a;
        p.fn = with_delay([a](const ga::Genome& g) { return rastrigin(g, a); }, params);
        return p;
    }
    throw ConfigError("unknown problem_id \"" + problem_id + "\"");
}

std::vector<std::string> registered_ids() {
    return {"onemax", "rastrigin", "sphere"};
}

} // namespace mqga::problems

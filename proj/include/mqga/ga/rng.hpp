#pragma once

#include <cstdint>
#include <random>

namespace mqga::ga {

// Deterministic random source. All draws go through hand-rolled mappings on
// top of mt19937_64 because the standard <random> distributions are allowed
// to differ between library implementations; with this wrapper a seed pins
// the whole trajectory on any platform we build on.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, n); n must be positive. Rejection sampling, no modulo
    // bias.
    std::uint64_t below(std::uint64_t n);

    // Uniform in [0, 1) with 53 significant bits.
    double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // True with probability p (p <= 0 never, p >= 1 always).
    bool chance(double p) { return next_double() < p; }

    double uniform(double low, double high) { return low + next_double() * (high - low); }

    // Box-Muller; consumes exactly two draws per call.
    double gaussian(double mean, double sigma);

  private:
    std::mt19937_64 gen_;
};

} // namespace mqga::ga

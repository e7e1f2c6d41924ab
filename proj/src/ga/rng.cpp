#include "mqga/ga/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "mqga/errors.hpp"

namespace mqga::ga {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0)
        throw InternalError("Rng::below(0)");
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t x = gen_();
    while (x >= limit) // rejected with probability < 2^-63 per iteration
        x = gen_();
    return x % n;
}

double Rng::gaussian(double mean, double sigma) {
    double u1 = next_double();
    const double u2 = next_double();
    if (u1 <= 0.0)
        u1 = 0x1.0p-53; // log(0) guard; hit with probability 2^-53
    return mean + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace mqga::ga

#pragma once

#include <chrono>
#include <cstdint>

namespace mqga::ga {

// Per-generation record of what the engine saw after the evaluation barrier.
struct GenerationReport {
    std::uint32_t generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    std::uint64_t evaluations_performed = 0;
    std::uint64_t duplicate_responses = 0;
    std::uint64_t republished_requests = 0;
    std::chrono::milliseconds wall_time{0};

    bool operator==(const GenerationReport&) const = default;
};

// Equality of everything a fixed seed pins down; wall_time is measurement,
// not trajectory.
inline bool same_trajectory(const GenerationReport& a, const GenerationReport& b) {
    return a.generation == b.generation && a.best_fitness == b.best_fitness &&
           a.mean_fitness == b.mean_fitness;
}

} // namespace mqga::ga

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "mqga/runtime/messages.hpp"

namespace mqga::runtime {

enum class Verdict { Accepted, Duplicate, Stale };

const char* verdict_name(Verdict v);

// Bookkeeping for one generation's scatter. outstanding and received stay
// disjoint and together always cover exactly the scattered index set.
struct ScatterState {
    std::string run_id;
    std::uint32_t generation = 0;
    std::set<std::uint32_t> outstanding;
    std::map<std::uint32_t, double> received;
    std::chrono::steady_clock::time_point deadline;
    std::uint32_t republish_count = 0;
};

// Applies one response: the first answer for an outstanding index is
// Accepted (and recorded), a repeat for an already-recorded index is
// Duplicate, and anything from an older generation (or otherwise impossible
// coordinates) is Stale. Only Accepted mutates the state.
Verdict dedup_accept(ScatterState& state, const EvalResponse& resp);

} // namespace mqga::runtime

#include "mqga/runtime/scatter.hpp"

#include "mqga/log.hpp"

namespace mqga::runtime {

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Accepted:
        return "accepted";
    case Verdict::Duplicate:
        return "duplicate";
    case Verdict::Stale:
        return "stale";
    }
    return "?";
}

Verdict dedup_accept(ScatterState& state, const EvalResponse& resp) {
    if (resp.run_id != state.run_id) {
        log::warn("scatter: response for foreign run \"", resp.run_id, "\" dropped");
        return Verdict::Stale;
    }
    if (resp.generation < state.generation)
        return Verdict::Stale;
    if (resp.generation > state.generation) {
        // No such request was ever published; treat like a straggler rather
        // than letting a broken worker poison the run.
        log::warn("scatter: response from future generation ", resp.generation, " dropped");
        return Verdict::Stale;
    }
    if (state.received.contains(resp.index))
        return Verdict::Duplicate;
    if (!state.outstanding.contains(resp.index)) {
        log::warn("scatter: response for never-scattered index ", resp.index, " dropped");
        return Verdict::Stale;
    }
    state.outstanding.erase(resp.index);
    state.received.emplace(resp.index, resp.fitness);
    return Verdict::Accepted;
}

} // namespace mqga::runtime

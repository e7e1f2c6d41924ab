#include "mqga/ga/genome.hpp"

#include <cmath>

#include "mqga/errors.hpp"

namespace mqga::ga {

const char* genome_kind_name(GenomeKind kind) {
    return kind == GenomeKind::Bitstring ? "bitstring" : "real_vector";
}

void validate(const Genome& g) {
    if (g.kind == GenomeKind::Bitstring) {
        if (!g.reals.empty())
            throw InternalError("bitstring genome carries real coordinates");
        if (g.bits.empty())
            throw InternalError("empty genome");
        for (const auto b : g.bits)
            if (b > 1)
                throw InternalError("bit outside {0,1}");
    } else {
        if (!g.bits.empty())
            throw InternalError("real genome carries bits");
        if (g.reals.empty())
            throw InternalError("empty genome");
        for (const auto x : g.reals)
            if (!std::isfinite(x))
                throw InternalError("non-finite coordinate");
    }
}

} // namespace mqga::ga

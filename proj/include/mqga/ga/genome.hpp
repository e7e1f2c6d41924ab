#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace mqga::ga {

enum class GenomeKind { Bitstring, RealVector };

const char* genome_kind_name(GenomeKind kind);

// One candidate solution. Exactly one of bits/reals is populated, matching
// kind; length is fixed for the whole run.
struct Genome {
    GenomeKind kind = GenomeKind::Bitstring;
    std::vector<std::uint8_t> bits; // each element 0 or 1
    std::vector<double> reals;      // all finite

    std::size_t length() const {
        return kind == GenomeKind::Bitstring ? bits.size() : reals.size();
    }

    bool operator==(const Genome&) const = default;
};

// Throws InternalError if the genome breaks its invariants (wrong side
// populated, zero length, bit not in {0,1}, non-finite coordinate).
void validate(const Genome& g);

struct Individual {
    Genome genome;
    std::optional<double> fitness; // finite when present
    std::uint32_t id = 0;          // position within its generation
};

struct Population {
    std::uint32_t generation = 0;
    std::vector<Individual> members; // ids 0..size-1 in order
};

} // namespace mqga::ga

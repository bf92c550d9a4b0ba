#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dedekind/intervals.hpp"

namespace dedekind {

// Reduced standard context of an interval: rows are its join irreducibles,
// columns its meet irreducibles, incidence is the lattice order. Row r is a
// bitset over columns; |J| and |M| never exceed the interval height, which is
// at most 64 for rank <= 6.
struct FormalContext {
    std::vector<Element> objects;     // join irreducibles, ascending
    std::vector<Element> attributes;  // meet irreducibles, ascending
    std::vector<std::uint64_t> rows;  // rows[r] bit c <=> objects[r] <= attributes[c]

    bool incidence(std::size_t r, std::size_t c) const { return (rows[r] >> c) & 1; }
};

// Join/meet irreducibles of the interval sublattice: members covering
// (covered by) exactly one member. The bounds themselves never qualify.
std::pair<std::vector<Element>, std::vector<Element>> irreducibles(
    int rank, Interval iv, std::span<const Element> elems);
std::pair<std::vector<Element>, std::vector<Element>> irreducibles(const IntervalTable& tbl);

FormalContext build_context(int rank, Interval iv, std::span<const Element> elems);
FormalContext build_context(const IntervalTable& tbl);

}  // namespace dedekind

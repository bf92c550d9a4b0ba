#include "dedekind/fca.hpp"

#include <bit>

namespace dedekind {

namespace {

// Covers inside an interval of D_n differ in exactly one bit, and dropping or
// adding bit p keeps a word in the lattice iff no strict superset of p's
// subset survives (resp. every strict subset is present). That makes cover
// counting O(width) per element with no membership searches.
int lower_cover_count(const CoverMasks& m, Element z, Element lo, int limit) {
    int count = 0;
    std::uint64_t candidates = z & ~lo;
    while (candidates) {
        const int p = std::countr_zero(candidates);
        candidates &= candidates - 1;
        if ((z & m.strict_up[p]) == 0 && ++count >= limit) break;
    }
    return count;
}

int upper_cover_count(const CoverMasks& m, Element z, Element hi, int limit) {
    int count = 0;
    std::uint64_t candidates = hi & ~z;
    while (candidates) {
        const int p = std::countr_zero(candidates);
        candidates &= candidates - 1;
        if ((m.strict_down[p] & ~z) == 0 && ++count >= limit) break;
    }
    return count;
}

}  // namespace

std::pair<std::vector<Element>, std::vector<Element>> irreducibles(
    int rank, Interval iv, std::span<const Element> elems) {
    const CoverMasks& m = cover_masks(rank);
    std::vector<Element> joins, meets;
    for (Element z : elems) {
        if (z != iv.lo && lower_cover_count(m, z, iv.lo, 2) == 1) joins.push_back(z);
        if (z != iv.hi && upper_cover_count(m, z, iv.hi, 2) == 1) meets.push_back(z);
    }
    return {std::move(joins), std::move(meets)};
}

std::pair<std::vector<Element>, std::vector<Element>> irreducibles(const IntervalTable& tbl) {
    return irreducibles(tbl.rank, tbl.interval, tbl.elems);
}

FormalContext build_context(int rank, Interval iv, std::span<const Element> elems) {
    FormalContext ctx;
    auto [joins, meets] = irreducibles(rank, iv, elems);
    ctx.objects = std::move(joins);
    ctx.attributes = std::move(meets);
    ctx.rows.assign(ctx.objects.size(), 0);
    for (std::size_t r = 0; r < ctx.objects.size(); ++r) {
        for (std::size_t c = 0; c < ctx.attributes.size(); ++c) {
            if (leq(ctx.objects[r], ctx.attributes[c])) ctx.rows[r] |= std::uint64_t{1} << c;
        }
    }
    return ctx;
}

FormalContext build_context(const IntervalTable& tbl) {
    return build_context(tbl.rank, tbl.interval, tbl.elems);
}

}  // namespace dedekind

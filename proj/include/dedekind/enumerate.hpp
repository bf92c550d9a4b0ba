#pragma once

#include <cstdint>
#include <vector>

#include "dedekind/bigint.hpp"
#include "dedekind/canon.hpp"
#include "dedekind/intervals.hpp"

namespace dedekind {

// Dense symmetric matrix of exact 64-bit counts over an interval (or over the
// whole lattice for the rank +2 trace form).
struct CountMatrix {
    int dim = 0;
    std::vector<std::uint64_t> e;  // row-major

    CountMatrix() = default;
    explicit CountMatrix(int d) : dim(d), e(std::size_t(d) * d, 0) {}
    std::uint64_t& at(int r, int c) { return e[std::size_t(r) * dim + c]; }
    std::uint64_t at(int r, int c) const { return e[std::size_t(r) * dim + c]; }
    std::uint64_t max_entry() const;
};

enum class Plus1Variant { direct, classes };
enum class Plus2Variant { direct, intervals, classes, matrix };
enum class Plus3Variant { direct, classes, matrix, squared };

// d(n+1): direct sums top(a) over the whole lattice, classes sums the
// interval-class cardinalities.
BigCounter d_plus1(const Lattice& lat, Plus1Variant variant, int jobs = 1);

// d(n+2): direct sums bot(a^b)*top(avb) over all element pairs, intervals
// sums (#I)^2, classes factors that through the class cardinalities, matrix
// evaluates Tr(alpha*beta) with full-lattice matrices. The matrix variant
// refuses dimensions above 20000 (3.2 GB per matrix).
BigCounter d_plus2(const Lattice& lat, Plus2Variant variant, int jobs = 1);

// d(n+3): direct/classes evaluate the triple sum of interval-relative top()
// factors, squared uses the (sum over c in [a, top]) form, matrix accumulates
// #[I] * Tr(alpha^3) per class representative.
BigCounter d_plus3(const Lattice& lat, Plus3Variant variant, int jobs = 1);

// Variants that reuse precomputed classes (the CLI computes them once).
BigCounter d_plus1_classes(const std::vector<IntervalClass>& classes);
BigCounter d_plus2_classes(const Lattice& lat, const std::vector<IntervalClass>& classes);
BigCounter d_plus3_classes(const Lattice& lat, const std::vector<IntervalClass>& classes,
                           int jobs = 1);
BigCounter d_plus3_matrix(const Lattice& lat, const std::vector<IntervalClass>& classes,
                          int jobs = 1);
BigCounter d_plus3_squared(const Lattice& lat, const std::vector<IntervalClass>& classes,
                           int jobs = 1);

// Per-interval building blocks, exposed for the cross-checking suites.
u128 plus3_triple_sum(const IntervalTable& tbl);           // sum of three top() factors
u128 plus3_triple_sum_dual(const IntervalTable& tbl);      // sum of three bot() factors
u128 plus3_squared_sum(const IntervalTable& tbl);          // squared inner-sum form
CountMatrix plus3_alpha(const IntervalTable& tbl);         // alpha(a,b) = top(avb)
// Tr(m^3) without materializing m^3. Squares with 64-bit entries when the
// bound max_entry^2 * dim fits, otherwise falls back to 128-bit accumulation.
u128 trace_cubed(const CountMatrix& m);

}  // namespace dedekind

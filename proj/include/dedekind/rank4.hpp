#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dedekind/bigint.hpp"
#include "dedekind/canon.hpp"
#include "dedekind/enumerate.hpp"
#include "dedekind/intervals.hpp"

namespace dedekind {

// Guard data for one Tr(gamma^2) evaluation. The bound is
// max_alpha * max_beta * #I; the trace fits 128 bits whenever
// max_entry^2 * (#I)^2 does, which is checked before summing.
struct TraceResult {
    u128 trace = 0;
    u128 bound = 0;      // a-priori gamma entry bound
    u128 max_entry = 0;  // largest gamma entry actually seen
    bool wide = false;   // gamma needed 128-bit accumulation
};

// Aggregated guard log across a run (acceptance wants these reported).
struct PrecisionStats {
    u128 max_bound = 0;
    u128 max_entry = 0;
    std::uint64_t traces = 0;
    std::uint64_t wide_recomputes = 0;
    std::uint64_t bound_above_2p51 = 0;  // pairs needing the exact recheck

    void note(const TraceResult& r);
    void merge(const PrecisionStats& o);
};

// alpha(c,d) = bot(a^c^d) * top(bvcvd), beta with a and b exchanged; both
// symmetric of dimension #I. Throws std::overflow_error if an entry bound
// cannot fit 64 bits (impossible for rank <= 5 bases). The second form reuses
// a position index built once per interval.
std::pair<CountMatrix, CountMatrix> build_alpha_beta(const IntervalTable& tbl, Element a,
                                                     Element b);
std::pair<CountMatrix, CountMatrix> build_alpha_beta(const IntervalTable& tbl,
                                                     const JoinMeetIndex& pos, Element a,
                                                     Element b);

// gamma = alpha * beta, result = sum gamma(d,e) * gamma(e,d). Recomputes with
// 128-bit accumulation when the 64-bit entry bound fails and aborts (never
// wraps) if even the 128-bit trace guarantee cannot be established.
TraceResult trace_gamma_squared(const CountMatrix& alpha, const CountMatrix& beta);

// Literal six-variable oracle over one interval; #I <= 8 or it refuses.
BigCounter d_plus4_direct(const IntervalTable& tbl);

// Sum of the oracle over every interval; the per-interval size limit applies.
BigCounter d_plus4_oracle_total(const Lattice& lat, int jobs = 1);

// Full double sum over ordered pairs (a,b) in I^2 per class representative.
BigCounter d_plus4_matrix(const Lattice& lat, const std::vector<IntervalClass>& classes,
                          int jobs = 1, PrecisionStats* stats = nullptr);

// Options for the symmetry-weighted pipeline. Chunks are groups of at most
// chunk_size pair classes inside one interval class; they are the checkpoint
// and parallelism granularity.
struct SymOptions {
    int jobs = 1;
    int chunk_size = 4096;
    std::string checkpoint_path;  // empty: no checkpointing
    std::int64_t max_chunks = -1; // stop after this many executed chunks (testing)
};

struct SymOutcome {
    BigCounter value;
    bool complete = true;
    std::uint64_t chunks_total = 0;
    std::uint64_t chunks_done = 0;
    std::uint64_t pair_classes = 0;
    std::uint64_t pairs_total = 0;
    PrecisionStats precision;
};

// Weighted pipeline: per interval class, classify pairs, then accumulate
// weight * #[(a,b)] * Tr(gamma^2) over pair classes and scale by #[I].
// With a checkpoint path the run resumes past completed chunks and refuses
// checkpoints written for another base or method.
SymOutcome d_plus4_sym_run(const Lattice& lat, const std::vector<IntervalClass>& classes,
                           const SymOptions& opt);

BigCounter d_plus4_sym(const Lattice& lat, const std::vector<IntervalClass>& classes,
                       int jobs = 1, PrecisionStats* stats = nullptr);

}  // namespace dedekind

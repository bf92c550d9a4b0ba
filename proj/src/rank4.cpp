#include "dedekind/rank4.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "dedekind/io.hpp"
#include "dedekind/parallel.hpp"

namespace dedekind {

namespace {

constexpr std::uint64_t kU64Max = ~std::uint64_t{0};
constexpr u128 kU128Max = ~u128{0};
constexpr u128 kTwoPow51 = u128{1} << 51;

u128 checked_mul(u128 a, u128 b, const char* what) {
    if (a != 0 && b > kU128Max / a) throw std::overflow_error(what);
    return a * b;
}

}  // namespace

void PrecisionStats::note(const TraceResult& r) {
    ++traces;
    max_bound = std::max(max_bound, r.bound);
    max_entry = std::max(max_entry, r.max_entry);
    if (r.wide) ++wide_recomputes;
    if (r.bound > kTwoPow51) ++bound_above_2p51;
}

void PrecisionStats::merge(const PrecisionStats& o) {
    max_bound = std::max(max_bound, o.max_bound);
    max_entry = std::max(max_entry, o.max_entry);
    traces += o.traces;
    wide_recomputes += o.wide_recomputes;
    bound_above_2p51 += o.bound_above_2p51;
}

std::pair<CountMatrix, CountMatrix> build_alpha_beta(const IntervalTable& tbl, Element a,
                                                     Element b) {
    const JoinMeetIndex pos(tbl, /*need_join=*/true, /*need_meet=*/true);
    return build_alpha_beta(tbl, pos, a, b);
}

std::pair<CountMatrix, CountMatrix> build_alpha_beta(const IntervalTable& tbl,
                                                     const JoinMeetIndex& pos, Element a,
                                                     Element b) {
    const auto ia = tbl.index_of(a);
    const auto ib = tbl.index_of(b);
    if (ia < 0 || ib < 0) throw std::invalid_argument("build_alpha_beta: element not in interval");
    const int k = tbl.size();

    const u128 max_alpha = u128(tbl.bot[ia]) * tbl.top[ib];
    const u128 max_beta = u128(tbl.bot[ib]) * tbl.top[ia];
    if (max_alpha > kU64Max || max_beta > kU64Max) {
        throw std::overflow_error("build_alpha_beta: entry bound exceeds 64 bits");
    }

    CountMatrix alpha(k), beta(k);
    for (int c = 0; c < k; ++c) {
        for (int d = c; d < k; ++d) {
            const std::uint32_t m = pos.meet_idx(c, d);
            const std::uint32_t j = pos.join_idx(c, d);
            const std::uint64_t av =
                std::uint64_t(tbl.bot[pos.meet_idx(ia, m)]) * tbl.top[pos.join_idx(ib, j)];
            const std::uint64_t bv =
                std::uint64_t(tbl.bot[pos.meet_idx(ib, m)]) * tbl.top[pos.join_idx(ia, j)];
            alpha.at(c, d) = av;
            alpha.at(d, c) = av;
            beta.at(c, d) = bv;
            beta.at(d, c) = bv;
        }
    }
    return {std::move(alpha), std::move(beta)};
}

TraceResult trace_gamma_squared(const CountMatrix& alpha, const CountMatrix& beta) {
    if (alpha.dim != beta.dim) throw std::invalid_argument("trace_gamma_squared: dim mismatch");
    const int k = alpha.dim;
    TraceResult res;
    if (k == 0) return res;

    const std::uint64_t max_a = alpha.max_entry();
    const std::uint64_t max_b = beta.max_entry();
    res.bound = checked_mul(checked_mul(max_a, max_b, "gamma bound"), u128(k), "gamma bound");

    std::vector<std::uint64_t> gamma64;
    std::vector<u128> gamma128;
    if (res.bound <= kU64Max) {
        gamma64.assign(std::size_t(k) * k, 0);
        for (int d = 0; d < k; ++d) {
            for (int c = 0; c < k; ++c) {
                const std::uint64_t v = alpha.at(d, c);
                if (v == 0) continue;
                const std::uint64_t* row = &beta.e[std::size_t(c) * k];
                std::uint64_t* out = &gamma64[std::size_t(d) * k];
                for (int e = 0; e < k; ++e) out[e] += v * row[e];
            }
        }
        for (std::uint64_t v : gamma64) res.max_entry = std::max(res.max_entry, u128(v));
    } else {
        // exact fallback when the 64-bit product bound cannot be shown
        res.wide = true;
        gamma128.assign(std::size_t(k) * k, 0);
        for (int d = 0; d < k; ++d) {
            for (int c = 0; c < k; ++c) {
                const std::uint64_t v = alpha.at(d, c);
                if (v == 0) continue;
                const std::uint64_t* row = &beta.e[std::size_t(c) * k];
                u128* out = &gamma128[std::size_t(d) * k];
                for (int e = 0; e < k; ++e) out[e] += u128(v) * row[e];
            }
        }
        for (u128 v : gamma128) res.max_entry = std::max(res.max_entry, v);
    }

    // trace <= max_entry^2 * k^2 must fit 128 bits; abort, never wrap
    const char* guard = "trace_gamma_squared: 128-bit trace guarantee violated";
    checked_mul(checked_mul(res.max_entry, res.max_entry, guard),
                checked_mul(u128(k), u128(k), guard), guard);

    u128 trace = 0;
    if (!gamma64.empty()) {
        for (int d = 0; d < k; ++d) {
            for (int e = 0; e < k; ++e) {
                trace += u128(gamma64[std::size_t(d) * k + e]) * gamma64[std::size_t(e) * k + d];
            }
        }
    } else {
        for (int d = 0; d < k; ++d) {
            for (int e = 0; e < k; ++e) {
                trace += gamma128[std::size_t(d) * k + e] * gamma128[std::size_t(e) * k + d];
            }
        }
    }
    res.trace = trace;
    return res;
}

BigCounter d_plus4_direct(const IntervalTable& tbl) {
    const int k = tbl.size();
    if (k > 8) {
        throw std::length_error("d_plus4_direct: interval larger than 8 elements");
    }
    const JoinMeetIndex pos(tbl, /*need_join=*/true, /*need_meet=*/true);
    u128 sum = 0;
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            for (int c = 0; c < k; ++c) {
                const int bc_meet = pos.meet_idx(b, c);
                const int ac_meet = pos.meet_idx(a, c);
                const int ac_join = pos.join_idx(a, c);
                const int bc_join = pos.join_idx(b, c);
                for (int d = 0; d < k; ++d) {
                    const std::uint64_t f1 = tbl.bot[pos.meet_idx(ac_meet, d)];
                    const std::uint64_t t1 = tbl.top[pos.join_idx(bc_join, d)];
                    const int bd_meet = pos.meet_idx(b, d);
                    const int ad_join = pos.join_idx(a, d);
                    for (int e = 0; e < k; ++e) {
                        const std::uint64_t f2 = tbl.bot[pos.meet_idx(bc_meet, e)];
                        const std::uint64_t t2 = tbl.top[pos.join_idx(ac_join, e)];
                        const std::uint64_t head = f1 * t1 * f2 * t2;
                        const int ae_meet = pos.meet_idx(a, e);
                        const int be_join = pos.join_idx(b, e);
                        std::uint64_t tail = 0;
                        for (int f = 0; f < k; ++f) {
                            tail += tbl.bot[pos.meet_idx(bd_meet, f)] *
                                    tbl.top[pos.join_idx(ad_join, f)] *
                                    tbl.bot[pos.meet_idx(ae_meet, f)] *
                                    tbl.top[pos.join_idx(be_join, f)];
                        }
                        sum += u128(head) * tail;
                    }
                }
            }
        }
    }
    return BigCounter::from_u128(sum);
}

BigCounter d_plus4_oracle_total(const Lattice& lat, int jobs) {
    const auto& elems = lat.elements();
    const std::size_t n = elems.size();
    std::vector<BigCounter> partial(resolve_jobs(jobs));
    parallel_for_dynamic(jobs, n, [&](std::size_t i, int worker) {
        for (std::size_t j = i; j < n; ++j) {
            if (!leq(elems[i], elems[j])) continue;
            const IntervalTable tbl = build_interval_table(lat, Interval{elems[i], elems[j]});
            partial[worker].add(d_plus4_direct(tbl));
        }
    });
    BigCounter total;
    for (auto& p : partial) total.add(p);
    return total;
}

BigCounter d_plus4_matrix(const Lattice& lat, const std::vector<IntervalClass>& classes, int jobs,
                          PrecisionStats* stats) {
    BigCounter total;
    PrecisionStats all_stats;
    const int workers = resolve_jobs(jobs);
    for (const auto& cls : classes) {
        const IntervalTable tbl = build_interval_table(lat, cls.representative);
        const JoinMeetIndex pos(tbl, true, true);
        const std::size_t k = tbl.elems.size();
        std::vector<BigAccumulator> partial(workers);
        std::vector<PrecisionStats> pstats(workers);
        parallel_for_dynamic(workers, k, [&](std::size_t ia, int worker) {
            for (std::size_t ib = 0; ib < k; ++ib) {
                auto [alpha, beta] = build_alpha_beta(tbl, pos, tbl.elems[ia], tbl.elems[ib]);
                const TraceResult r = trace_gamma_squared(alpha, beta);
                pstats[worker].note(r);
                partial[worker].add(r.trace);
            }
        });
        BigCounter class_sum;
        for (auto& acc : partial) class_sum.add(acc.take());
        for (const auto& ps : pstats) all_stats.merge(ps);
        class_sum.mul(cls.cardinality);
        total.add(class_sum);
    }
    if (stats) stats->merge(all_stats);
    return total;
}

SymOutcome d_plus4_sym_run(const Lattice& lat, const std::vector<IntervalClass>& classes,
                           const SymOptions& opt) {
    if (opt.chunk_size <= 0) throw std::invalid_argument("d_plus4_sym: chunk_size must be positive");

    Checkpoint ck;
    const bool use_checkpoint = !opt.checkpoint_path.empty();
    if (use_checkpoint && std::filesystem::exists(opt.checkpoint_path)) {
        ck = load_checkpoint(opt.checkpoint_path);
        if (ck.base != lat.rank() || ck.method != "plus4-sym") {
            throw std::runtime_error("checkpoint mismatch: refusing to resume (" +
                                     std::to_string(ck.base) + "/" + ck.method + " vs " +
                                     std::to_string(lat.rank()) + "/plus4-sym)");
        }
        if (ck.chunks_per_class.size() != classes.size()) {
            throw std::runtime_error("checkpoint mismatch: interval class count differs");
        }
    } else {
        ck.base = lat.rank();
        ck.method = "plus4-sym";
        ck.chunks_per_class.assign(classes.size(), -1);
    }

    SymOutcome out;
    out.value = ck.partial;
    std::int64_t executed = 0;
    const int workers = resolve_jobs(opt.jobs);

    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        // a class whose chunk layout is known and fully done needs no work
        if (ck.chunks_per_class[ci] >= 0) {
            bool all_done = true;
            for (std::int64_t si = 0; si < ck.chunks_per_class[ci]; ++si) {
                if (!ck.done.count(std::to_string(ci) + ":" + std::to_string(si))) {
                    all_done = false;
                    break;
                }
            }
            if (all_done) {
                out.chunks_total += static_cast<std::uint64_t>(ck.chunks_per_class[ci]);
                out.chunks_done += static_cast<std::uint64_t>(ck.chunks_per_class[ci]);
                continue;
            }
        }
        if (opt.max_chunks >= 0 && executed >= opt.max_chunks) {
            out.complete = false;
            break;
        }

        const IntervalTable tbl = build_interval_table(lat, classes[ci].representative);
        const FormalContext ctx = build_context(tbl);
        const std::vector<PairClass> pairs = classify_pairs(tbl, ctx, workers);
        out.pair_classes += pairs.size();
        out.pairs_total += std::uint64_t(tbl.elems.size()) * (tbl.elems.size() + 1) / 2;

        const std::int64_t chunk_count =
            static_cast<std::int64_t>((pairs.size() + opt.chunk_size - 1) / opt.chunk_size);
        ck.chunks_per_class[ci] = std::max<std::int64_t>(chunk_count, 0);
        out.chunks_total += static_cast<std::uint64_t>(ck.chunks_per_class[ci]);
        const JoinMeetIndex pos(tbl, true, true);

        for (std::int64_t si = 0; si < chunk_count; ++si) {
            const std::string id = std::to_string(ci) + ":" + std::to_string(si);
            if (ck.done.count(id)) {
                ++out.chunks_done;
                continue;
            }
            if (opt.max_chunks >= 0 && executed >= opt.max_chunks) {
                out.complete = false;
                break;
            }
            const std::size_t lo = std::size_t(si) * opt.chunk_size;
            const std::size_t hi = std::min(pairs.size(), lo + std::size_t(opt.chunk_size));
            std::vector<BigAccumulator> partial(workers);
            std::vector<PrecisionStats> pstats(workers);
            parallel_for_dynamic(workers, hi - lo, [&](std::size_t off, int worker) {
                const PairClass& pc = pairs[lo + off];
                auto [alpha, beta] = build_alpha_beta(tbl, pos, pc.a, pc.b);
                const TraceResult r = trace_gamma_squared(alpha, beta);
                pstats[worker].note(r);
                BigCounter term = BigCounter::from_u128(r.trace);
                term.mul(std::uint64_t(pc.weight) * pc.cardinality);
                partial[worker].add(term);
            });
            BigCounter chunk_sum;
            for (auto& acc : partial) chunk_sum.add(acc.take());
            for (const auto& ps : pstats) out.precision.merge(ps);
            chunk_sum.mul(classes[ci].cardinality);
            out.value.add(chunk_sum);
            ck.partial.add(chunk_sum);
            ck.done.insert(id);
            ++out.chunks_done;
            ++executed;
            if (use_checkpoint) save_checkpoint(opt.checkpoint_path, ck);
        }
        if (!out.complete) break;
    }
    return out;
}

BigCounter d_plus4_sym(const Lattice& lat, const std::vector<IntervalClass>& classes, int jobs,
                       PrecisionStats* stats) {
    SymOptions opt;
    opt.jobs = jobs;
    SymOutcome out = d_plus4_sym_run(lat, classes, opt);
    if (stats) stats->merge(out.precision);
    return std::move(out.value);
}

}  // namespace dedekind

#include "dedekind/enumerate.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "dedekind/parallel.hpp"

namespace dedekind {

namespace {

constexpr std::uint64_t kU64Max = ~std::uint64_t{0};
constexpr u128 kU128Max = ~u128{0};

u128 checked_mul(u128 a, u128 b) {
    if (a != 0 && b > kU128Max / a) {
        throw std::overflow_error("exact bound exceeds 128-bit range");
    }
    return a * b;
}

std::uint64_t interval_size(const Lattice& lat, Interval iv) {
    std::uint64_t k = 0;
    const auto& elems = lat.elements();
    auto first = std::lower_bound(elems.begin(), elems.end(), iv.lo);
    auto last = std::upper_bound(first, elems.end(), iv.hi);
    for (auto it = first; it != last; ++it) {
        if (leq(iv.lo, *it) && leq(*it, iv.hi)) ++k;
    }
    return k;
}

}  // namespace

std::uint64_t CountMatrix::max_entry() const {
    std::uint64_t m = 0;
    for (std::uint64_t v : e) m = std::max(m, v);
    return m;
}

// ------------------------------------------------------------------- rank +1

BigCounter d_plus1(const Lattice& lat, Plus1Variant variant, int jobs) {
    if (variant == Plus1Variant::classes) {
        return d_plus1_classes(classify_intervals(lat, jobs));
    }
    const auto& elems = lat.elements();
    const std::size_t n = elems.size();
    std::vector<std::uint64_t> partial(resolve_jobs(jobs), 0);
    parallel_for_dynamic(jobs, n, [&](std::size_t i, int worker) {
        std::uint64_t tops = 0;
        for (std::size_t j = i; j < n; ++j) {
            if (leq(elems[i], elems[j])) ++tops;
        }
        partial[worker] += tops;
    });
    BigCounter total;
    for (std::uint64_t p : partial) total.add(p);
    return total;
}

BigCounter d_plus1_classes(const std::vector<IntervalClass>& classes) {
    BigCounter total;
    for (const auto& cls : classes) total.add(cls.cardinality);
    return total;
}

// ------------------------------------------------------------------- rank +2

BigCounter d_plus2(const Lattice& lat, Plus2Variant variant, int jobs) {
    const auto& elems = lat.elements();
    const std::size_t n = elems.size();

    switch (variant) {
        case Plus2Variant::direct: {
            const IntervalTable full = full_lattice_table(lat);
            std::vector<BigAccumulator> partial(resolve_jobs(jobs));
            parallel_for_dynamic(jobs, n, [&](std::size_t i, int worker) {
                u128 row = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    const auto mi = lat.index_of(meet(elems[i], elems[j]));
                    const auto ji = lat.index_of(join(elems[i], elems[j]));
                    row += u128(full.bot[mi]) * full.top[ji];
                }
                partial[worker].add(row);
            });
            BigCounter total;
            for (auto& acc : partial) total.add(acc.take());
            return total;
        }
        case Plus2Variant::intervals: {
            std::vector<BigAccumulator> partial(resolve_jobs(jobs));
            parallel_for_dynamic(jobs, n, [&](std::size_t i, int worker) {
                std::vector<Element> upset;
                for (std::size_t j = i; j < n; ++j) {
                    if (leq(elems[i], elems[j])) upset.push_back(elems[j]);
                }
                u128 row = 0;
                for (Element y : upset) {
                    std::uint64_t k = 0;
                    for (Element z : upset) {
                        if (z > y) break;
                        if (leq(z, y)) ++k;
                    }
                    row += u128(k) * k;
                }
                partial[worker].add(row);
            });
            BigCounter total;
            for (auto& acc : partial) total.add(acc.take());
            return total;
        }
        case Plus2Variant::classes:
            return d_plus2_classes(lat, classify_intervals(lat, jobs));
        case Plus2Variant::matrix: {
            if (n > 20000) {
                throw std::invalid_argument(
                    "d_plus2 matrix variant refuses dimension > 20000 (memory guard)");
            }
            const IntervalTable full = full_lattice_table(lat);
            const int dim = static_cast<int>(n);
            CountMatrix alpha(dim), beta(dim);
            parallel_for_dynamic(jobs, n, [&](std::size_t i, int) {
                for (std::size_t j = 0; j < n; ++j) {
                    alpha.at(i, j) = full.bot[lat.index_of(meet(elems[i], elems[j]))];
                    beta.at(i, j) = full.top[lat.index_of(join(elems[i], elems[j]))];
                }
            });
            std::vector<BigAccumulator> partial(resolve_jobs(jobs));
            parallel_for_dynamic(jobs, n, [&](std::size_t i, int worker) {
                u128 row = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    row += u128(alpha.at(i, j)) * beta.at(j, i);
                }
                partial[worker].add(row);
            });
            BigCounter total;
            for (auto& acc : partial) total.add(acc.take());
            return total;
        }
    }
    throw std::logic_error("d_plus2: bad variant");
}

BigCounter d_plus2_classes(const Lattice& lat, const std::vector<IntervalClass>& classes) {
    BigCounter total;
    for (const auto& cls : classes) {
        const std::uint64_t k = interval_size(lat, cls.representative);
        BigCounter term(k);
        term.mul(k);
        term.mul(cls.cardinality);
        total.add(term);
    }
    return total;
}

// ------------------------------------------------------------------- rank +3

u128 plus3_triple_sum(const IntervalTable& tbl) {
    const int k = tbl.size();
    const JoinMeetIndex pos(tbl, /*need_join=*/true, /*need_meet=*/false);
    u128 sum = 0;
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            const std::uint64_t tab = tbl.top[pos.join_idx(a, b)];
            u128 inner = 0;
            for (int c = 0; c < k; ++c) {
                inner += std::uint64_t(tbl.top[pos.join_idx(a, c)]) * tbl.top[pos.join_idx(b, c)];
            }
            sum += tab * inner;
        }
    }
    return sum;
}

u128 plus3_triple_sum_dual(const IntervalTable& tbl) {
    const int k = tbl.size();
    const JoinMeetIndex pos(tbl, /*need_join=*/false, /*need_meet=*/true);
    u128 sum = 0;
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            const std::uint64_t bab = tbl.bot[pos.meet_idx(a, b)];
            u128 inner = 0;
            for (int c = 0; c < k; ++c) {
                inner += std::uint64_t(tbl.bot[pos.meet_idx(a, c)]) * tbl.bot[pos.meet_idx(b, c)];
            }
            sum += bab * inner;
        }
    }
    return sum;
}

u128 plus3_squared_sum(const IntervalTable& tbl) {
    const int k = tbl.size();
    const JoinMeetIndex pos(tbl, /*need_join=*/false, /*need_meet=*/true);
    u128 sum = 0;
    std::vector<int> above;
    for (int a = 0; a < k; ++a) {
        above.clear();
        for (int c = a; c < k; ++c) {
            if (leq(tbl.elems[a], tbl.elems[c])) above.push_back(c);
        }
        for (int b = 0; b < k; ++b) {
            std::uint64_t inner = 0;
            for (int c : above) inner += tbl.bot[pos.meet_idx(b, c)];
            sum += u128(inner) * inner;
        }
    }
    return sum;
}

CountMatrix plus3_alpha(const IntervalTable& tbl) {
    const int k = tbl.size();
    const JoinMeetIndex pos(tbl, /*need_join=*/true, /*need_meet=*/false);
    CountMatrix alpha(k);
    for (int a = 0; a < k; ++a) {
        for (int b = a; b < k; ++b) {
            const std::uint64_t v = tbl.top[pos.join_idx(a, b)];
            alpha.at(a, b) = v;
            alpha.at(b, a) = v;
        }
    }
    return alpha;
}

u128 trace_cubed(const CountMatrix& m) {
    const int k = m.dim;
    if (k == 0) return 0;
    const std::uint64_t maxe = m.max_entry();
    // trace <= maxe^3 * k^3; abort rather than wrap if that cannot be shown
    const u128 square_bound = checked_mul(checked_mul(maxe, maxe), u128(k));
    checked_mul(square_bound, checked_mul(maxe, checked_mul(u128(k), u128(k))));

    u128 trace = 0;
    if (square_bound <= kU64Max) {
        CountMatrix sq(k);
        for (int i = 0; i < k; ++i) {
            for (int l = 0; l < k; ++l) {
                const std::uint64_t v = m.at(i, l);
                if (v == 0) continue;
                const std::uint64_t* row = &m.e[std::size_t(l) * k];
                std::uint64_t* out = &sq.e[std::size_t(i) * k];
                for (int j = 0; j < k; ++j) out[j] += v * row[j];
            }
        }
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) trace += u128(m.at(i, j)) * sq.at(j, i);
        }
    } else {
        std::vector<u128> sq(std::size_t(k) * k, 0);
        for (int i = 0; i < k; ++i) {
            for (int l = 0; l < k; ++l) {
                const std::uint64_t v = m.at(i, l);
                if (v == 0) continue;
                const std::uint64_t* row = &m.e[std::size_t(l) * k];
                u128* out = &sq[std::size_t(i) * k];
                for (int j = 0; j < k; ++j) out[j] += u128(v) * row[j];
            }
        }
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) trace += u128(m.at(i, j)) * sq[std::size_t(j) * k + i];
        }
    }
    return trace;
}

namespace {

BigCounter sum_over_intervals(const Lattice& lat, int jobs,
                              u128 (*per_interval)(const IntervalTable&)) {
    const auto& elems = lat.elements();
    const std::size_t n = elems.size();
    std::vector<BigAccumulator> partial(resolve_jobs(jobs));
    parallel_for_dynamic(jobs, n, [&](std::size_t i, int worker) {
        for (std::size_t j = i; j < n; ++j) {
            if (!leq(elems[i], elems[j])) continue;
            const IntervalTable tbl = build_interval_table(lat, Interval{elems[i], elems[j]});
            partial[worker].add(per_interval(tbl));
        }
    });
    BigCounter total;
    for (auto& acc : partial) total.add(acc.take());
    return total;
}

BigCounter sum_over_classes(const Lattice& lat, const std::vector<IntervalClass>& classes,
                            int jobs, u128 (*per_interval)(const IntervalTable&)) {
    std::vector<BigCounter> results(classes.size());
    parallel_for_dynamic(jobs, classes.size(), [&](std::size_t c, int) {
        const IntervalTable tbl = build_interval_table(lat, classes[c].representative);
        BigCounter term = BigCounter::from_u128(per_interval(tbl));
        term.mul(classes[c].cardinality);
        results[c] = std::move(term);
    });
    BigCounter total;
    for (auto& r : results) total.add(r);
    return total;
}

}  // namespace

BigCounter d_plus3(const Lattice& lat, Plus3Variant variant, int jobs) {
    switch (variant) {
        case Plus3Variant::direct:
            return sum_over_intervals(lat, jobs, plus3_triple_sum);
        case Plus3Variant::classes:
            return d_plus3_classes(lat, classify_intervals(lat, jobs), jobs);
        case Plus3Variant::matrix:
            return d_plus3_matrix(lat, classify_intervals(lat, jobs), jobs);
        case Plus3Variant::squared:
            return d_plus3_squared(lat, classify_intervals(lat, jobs), jobs);
    }
    throw std::logic_error("d_plus3: bad variant");
}

BigCounter d_plus3_classes(const Lattice& lat, const std::vector<IntervalClass>& classes,
                           int jobs) {
    return sum_over_classes(lat, classes, jobs, plus3_triple_sum);
}

BigCounter d_plus3_matrix(const Lattice& lat, const std::vector<IntervalClass>& classes,
                          int jobs) {
    return sum_over_classes(lat, classes, jobs, [](const IntervalTable& tbl) {
        return trace_cubed(plus3_alpha(tbl));
    });
}

BigCounter d_plus3_squared(const Lattice& lat, const std::vector<IntervalClass>& classes,
                           int jobs) {
    return sum_over_classes(lat, classes, jobs, plus3_squared_sum);
}

}  // namespace dedekind

#include "dedekind/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "dedekind/canon.hpp"
#include "dedekind/enumerate.hpp"
#include "dedekind/known_values.hpp"
#include "dedekind/rank4.hpp"

namespace dedekind {

namespace {

constexpr u128 kTwoPow51 = u128{1} << 51;

std::string u128_str(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
        s.push_back(static_cast<char>('0' + int(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

template <typename F>
CheckResult timed_check(const std::string& name, F&& fn) {
    CheckResult r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        auto [ok, detail] = fn();
        r.ok = ok;
        r.detail = std::move(detail);
    } catch (const std::exception& e) {
        r.ok = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::pair<bool, std::string> expect_value(const BigCounter& got, const BigCounter& want) {
    if (got == want) return {true, got.to_string()};
    return {false, "got " + got.to_string() + ", want " + want.to_string()};
}

// ------------------------------------------------------------ verify checks

struct PairBoundSummary {
    u128 max_bound = 0;
    std::uint64_t pairs = 0;
    std::uint64_t above_2p51 = 0;
    std::uint64_t above_u64 = 0;
};

PairBoundSummary scan_pair_bounds(const Lattice& lat, const std::vector<IntervalClass>& classes) {
    PairBoundSummary s;
    for (const auto& cls : classes) {
        const IntervalTable tbl = build_interval_table(lat, cls.representative);
        const std::size_t k = tbl.elems.size();
        for (std::size_t i = 0; i < k; ++i) {
            const u128 fa = u128(tbl.bot[i]) * tbl.top[i];
            for (std::size_t j = i; j < k; ++j) {
                const u128 fb = u128(tbl.bot[j]) * tbl.top[j];
                // max_alpha * max_beta * #I = bot(a)top(b) * bot(b)top(a) * k
                const u128 bound = fa * fb * k;
                ++s.pairs;
                s.max_bound = std::max(s.max_bound, bound);
                if (bound > kTwoPow51) ++s.above_2p51;
                if (bound > u128(~std::uint64_t{0})) ++s.above_u64;
            }
        }
    }
    return s;
}

}  // namespace

CheckReport verify(int base, bool full, int jobs) {
    if (base < 0) throw std::invalid_argument("verify: negative base");
    if (!full && base > 4) throw std::invalid_argument("verify quick supports base <= 4");
    if (base > 5) throw std::invalid_argument("verify supports base <= 5");

    CheckReport report;
    const Lattice lat = generate_lattice(base);

    report.checks.push_back(timed_check("lattice-count", [&] {
        BigCounter got(lat.size());
        return expect_value(got, known_dedekind(base));
    }));

    report.checks.push_back(timed_check("plus1", [&] {
        return expect_value(d_plus1(lat, Plus1Variant::direct, jobs), known_dedekind(base + 1));
    }));

    std::vector<IntervalClass> classes = classify_intervals(lat, jobs);

    report.checks.push_back(timed_check("plus1-classes", [&] {
        return expect_value(d_plus1_classes(classes), known_dedekind(base + 1));
    }));

    report.checks.push_back(timed_check("interval-class-count", [&] {
        static const std::map<int, std::uint64_t> known = {{2, 6}, {3, 18}, {4, 134}, {5, 9919}};
        auto it = known.find(base);
        if (it == known.end()) {
            return std::pair{true, std::to_string(classes.size()) + " classes (no reference)"};
        }
        if (classes.size() == it->second) return std::pair{true, std::to_string(classes.size())};
        return std::pair{false, "got " + std::to_string(classes.size()) + ", want " +
                                    std::to_string(it->second)};
    }));

    const BigCounter want2 = known_dedekind(base + 2);
    report.checks.push_back(timed_check(
        "plus2", [&] { return expect_value(d_plus2(lat, Plus2Variant::direct, jobs), want2); }));
    report.checks.push_back(timed_check("plus2-intervals", [&] {
        return expect_value(d_plus2(lat, Plus2Variant::intervals, jobs), want2);
    }));
    report.checks.push_back(timed_check(
        "plus2-classes", [&] { return expect_value(d_plus2_classes(lat, classes), want2); }));
    report.checks.push_back(timed_check(
        "plus2-matrix", [&] { return expect_value(d_plus2(lat, Plus2Variant::matrix, jobs), want2); }));

    if (base <= 4) {
        const BigCounter want3 = known_dedekind(base + 3);
        report.checks.push_back(timed_check("plus3", [&] {
            return expect_value(d_plus3(lat, Plus3Variant::direct, jobs), want3);
        }));
        report.checks.push_back(timed_check("plus3-classes", [&] {
            return expect_value(d_plus3_classes(lat, classes, jobs), want3);
        }));
        report.checks.push_back(timed_check("plus3-matrix", [&] {
            return expect_value(d_plus3_matrix(lat, classes, jobs), want3);
        }));
        report.checks.push_back(timed_check("plus3-squared", [&] {
            return expect_value(d_plus3_squared(lat, classes, jobs), want3);
        }));
        report.checks.push_back(timed_check("plus3-dualization", [&] {
            BigCounter tops = BigCounter(0), bots = BigCounter(0);
            for_each_interval(lat, [&](Interval iv) {
                const IntervalTable tbl = build_interval_table(lat, iv);
                tops.add(plus3_triple_sum(tbl));
                bots.add(plus3_triple_sum_dual(tbl));
            });
            return expect_value(tops, bots);
        }));
    }

    if (base <= 3) {
        report.checks.push_back(timed_check("plus4-matrix", [&] {
            return expect_value(d_plus4_matrix(lat, classes, jobs), known_dedekind(base + 4));
        }));
    }
    if (base <= 2) {
        report.checks.push_back(timed_check("plus4-oracle", [&] {
            return expect_value(d_plus4_oracle_total(lat, jobs), known_dedekind(base + 4));
        }));
    }
    if (base <= 4) {
        static const std::map<int, std::pair<std::uint64_t, std::uint64_t>> known_reductions = {
            {2, {56, 33}}, {3, {1127, 446}}, {4, {274409, 80741}}};
        SymOptions opt;
        opt.jobs = jobs;
        SymOutcome outcome;
        report.checks.push_back(timed_check("plus4-sym", [&] {
            outcome = d_plus4_sym_run(lat, classes, opt);
            return expect_value(outcome.value, known_dedekind(base + 4));
        }));
        report.checks.push_back(timed_check("pair-reduction", [&] {
            const std::string got =
                std::to_string(outcome.pairs_total) + " -> " + std::to_string(outcome.pair_classes);
            auto it = known_reductions.find(base);
            if (it == known_reductions.end()) return std::pair{true, got + " (no reference)"};
            if (outcome.pairs_total == it->second.first &&
                outcome.pair_classes == it->second.second) {
                return std::pair{true, got};
            }
            return std::pair{false, "got " + got + ", want " + std::to_string(it->second.first) +
                                        " -> " + std::to_string(it->second.second)};
        }));
        report.checks.push_back(timed_check("gamma-guard-log", [&] {
            if (outcome.precision.max_entry > outcome.precision.max_bound) {
                return std::pair{false, "max gamma entry " + u128_str(outcome.precision.max_entry) +
                                            " exceeds bound " +
                                            u128_str(outcome.precision.max_bound)};
            }
            return std::pair{true, std::to_string(outcome.precision.traces) + " traces, max entry " +
                                       u128_str(outcome.precision.max_entry) + " <= bound " +
                                       u128_str(outcome.precision.max_bound) + ", " +
                                       std::to_string(outcome.precision.wide_recomputes) +
                                       " wide recomputes"};
        }));
    }

    report.checks.push_back(timed_check("precision-bound-chain", [&] {
        const PairBoundSummary s = scan_pair_bounds(lat, classes);
        std::ostringstream os;
        os << s.pairs << " pairs, max bound " << u128_str(s.max_bound) << ", " << s.above_2p51
           << " above 2^51, " << s.above_u64 << " above 2^64";
        // Entries below 2^51 with dimension <= 2^13 guarantee the 128-bit
        // trace; pairs above that line need the exact recomputation path.
        bool ok = true;
        for (const auto& cls : classes) {
            const std::uint64_t k = interval_elements(lat, cls.representative).size();
            if (k > 8192) ok = false;
        }
        if (base <= 4 && s.above_2p51 != 0) ok = false;
        return std::pair{ok, os.str()};
    }));

    return report;
}

// ---------------------------------------------------------------- selftest

namespace {

ColoredGraph relabel(const ColoredGraph& g, const std::vector<int>& perm) {
    ColoredGraph h;
    h.vertex_count = g.vertex_count;
    h.color.resize(g.color.size());
    for (int v = 0; v < g.vertex_count; ++v) h.color[perm[v]] = g.color[v];
    h.edges.reserve(g.edges.size());
    for (auto [u, v] : g.edges) h.edges.emplace_back(perm[u], perm[v]);
    return h;
}

using Partition = std::set<std::set<std::pair<Element, Element>>>;

Partition group_by_key(const std::vector<std::pair<std::pair<Element, Element>, CanonicalKey>>& items) {
    std::map<CanonicalKey, std::set<std::pair<Element, Element>>> groups;
    for (const auto& [item, key] : items) groups[key].insert(item);
    Partition p;
    for (auto& [key, members] : groups) p.insert(members);
    return p;
}

}  // namespace

CheckReport selftest(int jobs) {
    CheckReport report;
    const Lattice d2 = generate_lattice(2);
    const Lattice d3 = generate_lattice(3);

    report.checks.push_back(timed_check("lattice-axioms", [&] {
        std::mt19937_64 rng(20230611);
        const auto& elems = d3.elements();
        std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
        for (int it = 0; it < 2000; ++it) {
            const Element x = elems[pick(rng)], y = elems[pick(rng)], z = elems[pick(rng)];
            if (meet(x, join(y, z)) != join(meet(x, y), meet(x, z))) {
                return std::pair{false, std::string("distributivity failed")};
            }
            if (join(x, meet(x, y)) != x || meet(x, join(x, y)) != x) {
                return std::pair{false, std::string("absorption failed")};
            }
            if (!d3.contains(join(x, y)) || !d3.contains(meet(x, y))) {
                return std::pair{false, std::string("closure failed")};
            }
            if (leq(x, y) != (meet(x, y) == x)) return std::pair{false, std::string("order failed")};
        }
        return std::pair{true, std::string("2000 random triples")};
    }));

    report.checks.push_back(timed_check("figure-labels", [&] {
        const std::vector<Element> want = {0,  1,  3,  5,  7,  15, 17, 19,  21,  23,
                                           31, 51, 55, 63, 85, 87, 95, 119, 127, 255};
        if (d3.elements() == want) return std::pair{true, std::string("20 elements")};
        return std::pair{false, std::string("element set mismatch")};
    }));

    report.checks.push_back(timed_check("canonical-key-stability", [&] {
        std::mt19937_64 rng(987654321);
        std::vector<ColoredGraph> graphs;
        const IntervalTable full = full_lattice_table(d2);
        const FormalContext ctx = build_context(full);
        graphs.push_back(interval_graph(ctx));
        graphs.push_back(pair_graph(full, ctx, 1, 3));
        {
            ColoredGraph g;
            g.vertex_count = 9;
            g.color = {0, 0, 0, 1, 1, 1, 2, 2, 0};
            std::uniform_int_distribution<int> coin(0, 1);
            for (int u = 0; u < 9; ++u) {
                for (int v = u + 1; v < 9; ++v) {
                    if (coin(rng)) g.edges.emplace_back(u, v);
                }
            }
            graphs.push_back(g);
        }
        for (const auto& g : graphs) {
            const CanonicalKey key = canonical_key(g);
            std::vector<int> perm(g.vertex_count);
            for (int i = 0; i < g.vertex_count; ++i) perm[i] = i;
            for (int it = 0; it < 1000; ++it) {
                std::shuffle(perm.begin(), perm.end(), rng);
                if (canonical_key(relabel(g, perm)) != key) {
                    return std::pair{false, std::string("key changed under relabeling")};
                }
            }
        }
        return std::pair{true, std::string("3 graphs x 1000 relabelings")};
    }));

    report.checks.push_back(timed_check("interval-class-partition", [&] {
        std::vector<std::pair<std::pair<Element, Element>, CanonicalKey>> items;
        for_each_interval(d2, [&](Interval iv) {
            const IntervalTable tbl = build_interval_table(d2, iv);
            items.push_back({{iv.lo, iv.hi}, canonical_key(interval_graph(build_context(tbl)))});
        });
        const Partition got = group_by_key(items);
        const Partition want = {
            {{0, 0}, {1, 1}, {3, 3}, {5, 5}, {7, 7}, {15, 15}},
            {{0, 1}, {1, 3}, {1, 5}, {3, 7}, {5, 7}, {7, 15}},
            {{0, 3}, {0, 5}, {3, 15}, {5, 15}},
            {{1, 7}},
            {{0, 7}, {1, 15}},
            {{0, 15}},
        };
        if (got == want) return std::pair{true, std::string("6 classes, member for member")};
        return std::pair{false, std::string("partition mismatch")};
    }));

    report.checks.push_back(timed_check("pair-class-partition", [&] {
        const IntervalTable full = full_lattice_table(d2);
        const FormalContext ctx = build_context(full);
        std::vector<std::pair<std::pair<Element, Element>, CanonicalKey>> items;
        for (std::size_t i = 0; i < full.elems.size(); ++i) {
            for (std::size_t j = i; j < full.elems.size(); ++j) {
                const Element a = full.elems[i], b = full.elems[j];
                items.push_back({{a, b}, canonical_key(pair_graph(full, ctx, a, b))});
            }
        }
        const Partition got = group_by_key(items);
        const Partition want = {
            {{0, 0}, {15, 15}},
            {{1, 1}, {7, 7}},
            {{3, 3}, {5, 5}},
            {{0, 1}, {7, 15}},
            {{3, 5}},
            {{0, 3}, {0, 5}, {3, 15}, {5, 15}},
            {{1, 3}, {1, 5}, {3, 7}, {5, 7}},
            {{1, 7}},
            {{0, 7}, {1, 15}},
            {{0, 15}},
        };
        if (got == want) return std::pair{true, std::string("10 classes, member for member")};
        return std::pair{false, std::string("partition mismatch")};
    }));

    report.checks.push_back(timed_check("rank4-oracle-equivalence", [&] {
        bool ok = true;
        for_each_interval(d2, [&](Interval iv) {
            if (!ok) return;
            const IntervalTable tbl = build_interval_table(d2, iv);
            const JoinMeetIndex pos(tbl, true, true);
            BigCounter traces;
            for (Element a : tbl.elems) {
                for (Element b : tbl.elems) {
                    auto [alpha, beta] = build_alpha_beta(tbl, pos, a, b);
                    traces.add(trace_gamma_squared(alpha, beta).trace);
                }
            }
            if (!(traces == d_plus4_direct(tbl))) ok = false;
        });
        if (ok) return std::pair{true, std::string("all 20 intervals of the rank-2 base")};
        return std::pair{false, std::string("oracle and trace path disagree")};
    }));

    report.checks.push_back(timed_check("bigint-roundtrip", [&] {
        for (int n = 0; n <= 9; ++n) {
            const BigCounter v = known_dedekind(n);
            if (BigCounter::from_string(v.to_string()) != v) {
                return std::pair{false, std::string("roundtrip failed")};
            }
        }
        BigCounter acc;
        acc.add(~std::uint64_t{0});
        acc.add(u128{1} << 100);
        acc.mul(1000000007);
        if (BigCounter::from_string(acc.to_string()) != acc) {
            return std::pair{false, std::string("arithmetic roundtrip failed")};
        }
        return std::pair{true, std::string("d(0)..d(9) and mixed arithmetic")};
    }));

    (void)jobs;
    return report;
}

}  // namespace dedekind

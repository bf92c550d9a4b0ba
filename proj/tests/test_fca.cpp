#include <doctest.h>

#include <algorithm>
#include <set>

#include "dedekind/fca.hpp"

using namespace dedekind;

namespace {

// Brute-force irreducibles: build the full order relation of the interval,
// take its transitive reduction, count covers. Independent of the bit tricks
// in the implementation.
std::pair<std::vector<Element>, std::vector<Element>> brute_irreducibles(
    const std::vector<Element>& elems, Element lo, Element hi) {
    const std::size_t k = elems.size();
    std::vector<std::vector<bool>> less(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            less[i][j] = (i != j) && leq(elems[i], elems[j]);
        }
    }
    auto covers = [&](std::size_t i, std::size_t j) {
        if (!less[i][j]) return false;
        for (std::size_t m = 0; m < k; ++m) {
            if (less[i][m] && less[m][j]) return false;
        }
        return true;
    };
    std::vector<Element> joins, meets;
    for (std::size_t j = 0; j < k; ++j) {
        int lower = 0, upper = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (covers(i, j)) ++lower;
            if (covers(j, i)) ++upper;
        }
        if (elems[j] != lo && lower == 1) joins.push_back(elems[j]);
        if (elems[j] != hi && upper == 1) meets.push_back(elems[j]);
    }
    return {joins, meets};
}

// Concept count of a context: number of distinct attribute-set closures.
// Reconstructs the interval size from the reduced context alone.
std::size_t concept_count(const FormalContext& ctx) {
    const std::size_t nm = ctx.attributes.size();
    std::set<std::uint64_t> intents;
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << nm); ++sub) {
        // extent: all objects whose row contains sub
        std::uint64_t closure = (nm == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << nm) - 1;
        for (std::size_t r = 0; r < ctx.objects.size(); ++r) {
            if ((ctx.rows[r] & sub) == sub) closure &= ctx.rows[r];
        }
        intents.insert(closure);
    }
    return intents.size();
}

}  // namespace

TEST_CASE("irreducibles of the rank-2 full interval") {
    const Lattice lat = generate_lattice(2);
    const IntervalTable tbl = build_interval_table(lat, {0, 15});
    auto [joins, meets] = irreducibles(tbl);
    CHECK(joins == std::vector<Element>{1, 3, 5, 15});
    CHECK(meets == std::vector<Element>{0, 3, 5, 7});
}

TEST_CASE("irreducibles match the brute-force cover oracle everywhere") {
    for (int n = 2; n <= 3; ++n) {
        const Lattice lat = generate_lattice(n);
        for_each_interval(lat, [&](Interval iv) {
            const IntervalTable tbl = build_interval_table(lat, iv);
            auto got = irreducibles(tbl);
            auto want = brute_irreducibles(tbl.elems, iv.lo, iv.hi);
            CHECK(got == want);
        });
    }
}

TEST_CASE("degenerate contexts") {
    const Lattice lat = generate_lattice(2);
    SUBCASE("singleton interval: empty context") {
        const FormalContext ctx = build_context(build_interval_table(lat, {7, 7}));
        CHECK(ctx.objects.empty());
        CHECK(ctx.attributes.empty());
    }
    SUBCASE("two-chain: 1x1 context with empty incidence") {
        const FormalContext ctx = build_context(build_interval_table(lat, {0, 1}));
        CHECK(ctx.objects == std::vector<Element>{1});
        CHECK(ctx.attributes == std::vector<Element>{0});
        CHECK(!ctx.incidence(0, 0));
    }
}

TEST_CASE("incidence rows of the rank-2 full interval") {
    const Lattice lat = generate_lattice(2);
    const FormalContext ctx = build_context(build_interval_table(lat, {0, 15}));
    // row of join irreducible 1: below meet irreducibles 3, 5, 7
    const std::size_t r1 = 0;  // objects ascending: 1, 3, 5, 15
    REQUIRE(ctx.objects[r1] == 1);
    std::vector<Element> above;
    for (std::size_t c = 0; c < ctx.attributes.size(); ++c) {
        if (ctx.incidence(r1, c)) above.push_back(ctx.attributes[c]);
    }
    CHECK(above == std::vector<Element>{3, 5, 7});
}

TEST_CASE("context is clarified and reduced") {
    for (int n = 2; n <= 3; ++n) {
        const Lattice lat = generate_lattice(n);
        for_each_interval(lat, [&](Interval iv) {
            const FormalContext ctx = build_context(build_interval_table(lat, iv));
            const std::size_t nj = ctx.objects.size();
            const std::size_t nm = ctx.attributes.size();
            const std::uint64_t full = (nm == 0) ? 0 : (std::uint64_t{1} << nm) - 1;
            // no duplicate rows, no row an intersection of other rows
            for (std::size_t r = 0; r < nj; ++r) {
                std::uint64_t inter = full;
                for (std::size_t s = 0; s < nj; ++s) {
                    if (s == r) continue;
                    CHECK(ctx.rows[r] != ctx.rows[s]);
                    if ((ctx.rows[r] & ctx.rows[s]) == ctx.rows[r]) inter &= ctx.rows[s];
                }
                CHECK(ctx.rows[r] != inter);
            }
            // same for columns, on the transposed incidence
            std::vector<std::uint64_t> cols(nm, 0);
            for (std::size_t r = 0; r < nj; ++r) {
                for (std::size_t c = 0; c < nm; ++c) {
                    if (ctx.incidence(r, c)) cols[c] |= std::uint64_t{1} << r;
                }
            }
            const std::uint64_t full_col = (nj == 0) ? 0 : (std::uint64_t{1} << nj) - 1;
            for (std::size_t c = 0; c < nm; ++c) {
                std::uint64_t inter = full_col;
                for (std::size_t d = 0; d < nm; ++d) {
                    if (d == c) continue;
                    CHECK(cols[c] != cols[d]);
                    if ((cols[c] & cols[d]) == cols[c]) inter &= cols[d];
                }
                CHECK(cols[c] != inter);
            }
        });
    }
}

TEST_CASE("concept lattice reconstructs the interval size") {
    for (int n = 2; n <= 3; ++n) {
        const Lattice lat = generate_lattice(n);
        for_each_interval(lat, [&](Interval iv) {
            const IntervalTable tbl = build_interval_table(lat, iv);
            const FormalContext ctx = build_context(tbl);
            CHECK(concept_count(ctx) == tbl.elems.size());
        });
    }
}

namespace {

std::pair<std::vector<int>, std::vector<int>> degree_profile(const FormalContext& ctx) {
    std::vector<int> rows, cols(ctx.attributes.size(), 0);
    for (std::size_t r = 0; r < ctx.objects.size(); ++r) {
        int deg = 0;
        for (std::size_t c = 0; c < ctx.attributes.size(); ++c) {
            if (ctx.incidence(r, c)) {
                ++deg;
                ++cols[c];
            }
        }
        rows.push_back(deg);
    }
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    return {rows, cols};
}

}  // namespace

TEST_CASE("dual interval has the transposed context") {
    // [0,7] and [1,15] in rank 2 are anti-isomorphic: the context of one is
    // the other's with rows and columns exchanged
    const Lattice lat = generate_lattice(2);
    const FormalContext a = build_context(build_interval_table(lat, {0, 7}));
    const FormalContext b = build_context(build_interval_table(lat, {1, 15}));
    REQUIRE(a.objects.size() == b.attributes.size());
    REQUIRE(a.attributes.size() == b.objects.size());
    const auto [a_rows, a_cols] = degree_profile(a);
    const auto [b_rows, b_cols] = degree_profile(b);
    CHECK(a_rows == b_cols);
    CHECK(a_cols == b_rows);
}

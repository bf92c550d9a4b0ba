#include <doctest.h>

#include "dedekind/intervals.hpp"

using namespace dedekind;

namespace {

// independent count: scan the raw element list for members of [lo, z]
std::uint32_t brute_bot(const std::vector<Element>& elems, Element lo, Element z) {
    std::uint32_t n = 0;
    for (Element w : elems) {
        if (leq(lo, w) && leq(w, z)) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("interval counts equal the next Dedekind number") {
    CHECK(count_intervals(generate_lattice(0)) == 3);
    CHECK(count_intervals(generate_lattice(1)) == 6);
    CHECK(count_intervals(generate_lattice(2)) == 20);
    CHECK(count_intervals(generate_lattice(4)) == 7581);
}

TEST_CASE("intervals stream in ascending lo-major order without repeats") {
    const Lattice lat = generate_lattice(2);
    std::vector<Interval> seen;
    for_each_interval(lat, [&](Interval iv) { seen.push_back(iv); });
    CHECK(seen.size() == 20);
    CHECK(seen.front() == Interval{0, 0});
    CHECK(seen.back() == Interval{15, 15});
    for (std::size_t i = 1; i < seen.size(); ++i) {
        const bool ascending = seen[i - 1].lo < seen[i].lo ||
                               (seen[i - 1].lo == seen[i].lo && seen[i - 1].hi < seen[i].hi);
        CHECK(ascending);
    }
    for (const Interval& iv : seen) CHECK(leq(iv.lo, iv.hi));
}

TEST_CASE("rank-2 full interval table") {
    const Lattice lat = generate_lattice(2);
    const IntervalTable tbl = build_interval_table(lat, {0, 15});
    CHECK(tbl.elems == std::vector<Element>{0, 1, 3, 5, 7, 15});
    CHECK(tbl.size() == 6);
    CHECK(tbl.top_of(1) == 5);
    CHECK(tbl.bot_of(0) == 1);
    CHECK(tbl.top_of(15) == 1);
    CHECK(tbl.bot_of(15) == 6);
    CHECK(tbl.top_of(0) == 6);
    // cross-check every operator value against a raw scan
    for (Element z : tbl.elems) {
        CHECK(tbl.bot_of(z) == brute_bot(lat.elements(), 0, z));
    }
}

TEST_CASE("singleton interval") {
    const Lattice lat = generate_lattice(2);
    const IntervalTable tbl = build_interval_table(lat, {7, 7});
    CHECK(tbl.size() == 1);
    CHECK(tbl.bot == std::vector<std::uint32_t>{1});
    CHECK(tbl.top == std::vector<std::uint32_t>{1});
}

TEST_CASE("invalid intervals are rejected") {
    const Lattice lat = generate_lattice(2);
    CHECK_THROWS_AS(build_interval_table(lat, {3, 5}), std::invalid_argument);
    CHECK_THROWS_AS(build_interval_table(lat, {2, 15}), std::invalid_argument);
}

TEST_CASE("operator bounds and sub-interval sum") {
    const Lattice lat = generate_lattice(3);
    for_each_interval(lat, [&](Interval iv) {
        const IntervalTable tbl = build_interval_table(lat, iv);
        const std::uint32_t k = tbl.size();
        std::uint64_t top_sum = 0;
        for (int i = 0; i < tbl.size(); ++i) {
            CHECK(tbl.bot[i] >= 1);
            CHECK(tbl.top[i] >= 1);
            CHECK(tbl.bot[i] <= k);
            CHECK(tbl.top[i] <= k);
            top_sum += tbl.top[i];
        }
        CHECK(tbl.bot[0] == 1);
        CHECK(tbl.top[tbl.size() - 1] == 1);
        CHECK(tbl.bot[tbl.size() - 1] == k);
        CHECK(tbl.top[0] == k);
        // sum of top() counts the sub-intervals
        const Lattice sub(lat.rank(), tbl.elems);
        std::uint64_t sub_intervals = 0;
        for (Element a : tbl.elems) {
            for (Element b : tbl.elems) {
                if (leq(a, b)) ++sub_intervals;
            }
        }
        CHECK(top_sum == sub_intervals);
    });
}

TEST_CASE("sum of squared interval sizes gives the rank +2 count") {
    const std::uint64_t want[] = {6, 20, 168, 7581};  // d(n+2) for n = 0..3
    for (int n = 0; n <= 3; ++n) {
        const Lattice lat = generate_lattice(n);
        std::uint64_t sum = 0;
        for_each_interval(lat, [&](Interval iv) {
            const std::uint64_t k = interval_elements(lat, iv).size();
            sum += k * k;
        });
        CHECK(sum == want[n]);
    }
}

TEST_CASE("join meet index tables agree with direct search") {
    const Lattice lat = generate_lattice(3);
    const IntervalTable tbl = build_interval_table(lat, {0, 255});
    const JoinMeetIndex pos(tbl, true, true);
    for (int i = 0; i < tbl.size(); ++i) {
        for (int j = 0; j < tbl.size(); ++j) {
            CHECK(tbl.elems[pos.join_idx(i, j)] == join(tbl.elems[i], tbl.elems[j]));
            CHECK(tbl.elems[pos.meet_idx(i, j)] == meet(tbl.elems[i], tbl.elems[j]));
        }
    }
}

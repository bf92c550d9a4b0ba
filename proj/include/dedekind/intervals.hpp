#pragma once

#include <cstdint>
#include <vector>

#include "dedekind/lattice.hpp"

namespace dedekind {

struct Interval {
    Element lo = 0;
    Element hi = 0;
    friend bool operator==(const Interval&, const Interval&) = default;
};

// Yields every [x, y] with x <= y exactly once, x-major then y ascending.
// The callback may return void; the stream is the only materialization.
template <typename F>
void for_each_interval(const Lattice& lat, F&& fn) {
    const auto& elems = lat.elements();
    const std::size_t n = elems.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (leq(elems[i], elems[j])) fn(Interval{elems[i], elems[j]});
        }
    }
}

std::uint64_t count_intervals(const Lattice& lat);

// All lattice elements within [lo, hi], ascending.
std::vector<Element> interval_elements(const Lattice& lat, Interval iv);

// A materialized interval with the per-element counting operators:
// bot[i] = #[lo, elems[i]] and top[i] = #[elems[i], hi], both within the
// interval itself.
struct IntervalTable {
    Interval interval;
    int rank = 0;  // rank of the ambient lattice
    std::vector<Element> elems;
    std::vector<std::uint32_t> bot;
    std::vector<std::uint32_t> top;

    int size() const { return static_cast<int>(elems.size()); }
    std::ptrdiff_t index_of(Element x) const;
    std::uint32_t bot_of(Element x) const { return bot[index_of_checked(x)]; }
    std::uint32_t top_of(Element x) const { return top[index_of_checked(x)]; }

private:
    std::size_t index_of_checked(Element x) const;
};

// Throws std::invalid_argument unless lo <= hi and both are lattice members.
IntervalTable build_interval_table(const Lattice& lat, Interval iv);

// Table for the whole lattice viewed as the interval [bottom, top].
IntervalTable full_lattice_table(const Lattice& lat);

// Join/meet position tables turn the inner sums of the rank formulas into
// array walks. Dense up to 2048 elements (32 MB for both tables), binary
// search beyond that.
class JoinMeetIndex {
public:
    static constexpr int kDenseLimit = 2048;

    JoinMeetIndex(const IntervalTable& tbl, bool need_join, bool need_meet);

    std::uint32_t join_idx(int i, int j) const {
        if (dense_) return join_at_[std::size_t(i) * dim_ + j];
        return static_cast<std::uint32_t>(tbl_->index_of(join(tbl_->elems[i], tbl_->elems[j])));
    }
    std::uint32_t meet_idx(int i, int j) const {
        if (dense_) return meet_at_[std::size_t(i) * dim_ + j];
        return static_cast<std::uint32_t>(tbl_->index_of(meet(tbl_->elems[i], tbl_->elems[j])));
    }

private:
    const IntervalTable* tbl_;
    int dim_;
    bool dense_;
    std::vector<std::uint32_t> join_at_, meet_at_;
};

}  // namespace dedekind

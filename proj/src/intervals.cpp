#include "dedekind/intervals.hpp"

#include <algorithm>
#include <stdexcept>

namespace dedekind {

std::uint64_t count_intervals(const Lattice& lat) {
    std::uint64_t n = 0;
    for_each_interval(lat, [&](Interval) { ++n; });
    return n;
}

std::vector<Element> interval_elements(const Lattice& lat, Interval iv) {
    std::vector<Element> out;
    const auto& elems = lat.elements();
    // Members lie between the bounds in the integer order too, so the scan
    // can start and stop at the bounds' positions.
    auto first = std::lower_bound(elems.begin(), elems.end(), iv.lo);
    auto last = std::upper_bound(first, elems.end(), iv.hi);
    for (auto it = first; it != last; ++it) {
        if (leq(iv.lo, *it) && leq(*it, iv.hi)) out.push_back(*it);
    }
    return out;
}

std::ptrdiff_t IntervalTable::index_of(Element x) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), x);
    if (it == elems.end() || *it != x) return -1;
    return it - elems.begin();
}

std::size_t IntervalTable::index_of_checked(Element x) const {
    std::ptrdiff_t i = index_of(x);
    if (i < 0) throw std::invalid_argument("IntervalTable: element not in interval");
    return static_cast<std::size_t>(i);
}

IntervalTable build_interval_table(const Lattice& lat, Interval iv) {
    if (!leq(iv.lo, iv.hi)) throw std::invalid_argument("build_interval_table: lo not below hi");
    if (!lat.contains(iv.lo) || !lat.contains(iv.hi)) {
        throw std::invalid_argument("build_interval_table: bounds not in lattice");
    }
    IntervalTable t;
    t.interval = iv;
    t.rank = lat.rank();
    t.elems = interval_elements(lat, iv);
    const std::size_t k = t.elems.size();
    t.bot.assign(k, 0);
    t.top.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            if (leq(t.elems[i], t.elems[j])) {
                ++t.bot[j];
                ++t.top[i];
            }
        }
    }
    return t;
}

IntervalTable full_lattice_table(const Lattice& lat) {
    return build_interval_table(lat, Interval{lat.bottom(), lat.top()});
}

JoinMeetIndex::JoinMeetIndex(const IntervalTable& tbl, bool need_join, bool need_meet)
    : tbl_(&tbl), dim_(tbl.size()), dense_(tbl.size() <= kDenseLimit) {
    if (!dense_) return;
    if (need_join) join_at_.resize(std::size_t(dim_) * dim_);
    if (need_meet) meet_at_.resize(std::size_t(dim_) * dim_);
    for (int i = 0; i < dim_; ++i) {
        for (int j = i; j < dim_; ++j) {
            if (need_join) {
                const auto v =
                    static_cast<std::uint32_t>(tbl.index_of(join(tbl.elems[i], tbl.elems[j])));
                join_at_[std::size_t(i) * dim_ + j] = v;
                join_at_[std::size_t(j) * dim_ + i] = v;
            }
            if (need_meet) {
                const auto v =
                    static_cast<std::uint32_t>(tbl.index_of(meet(tbl.elems[i], tbl.elems[j])));
                meet_at_[std::size_t(i) * dim_ + j] = v;
                meet_at_[std::size_t(j) * dim_ + i] = v;
            }
        }
    }
}

}  // namespace dedekind

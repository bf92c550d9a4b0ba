#include "dedekind/canon.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "dedekind/parallel.hpp"

namespace dedekind {

namespace {

// ---------------------------------------------------------------- adjacency

struct AdjMatrix {
    int n = 0;
    int words = 0;
    std::vector<std::uint64_t> bits;  // n rows of `words` words each

    explicit AdjMatrix(int vertices)
        : n(vertices), words((vertices + 63) / 64), bits(std::size_t(vertices) * words, 0) {}

    bool get(int u, int v) const {
        return (bits[std::size_t(u) * words + (v >> 6)] >> (v & 63)) & 1;
    }
    void set(int u, int v) { bits[std::size_t(u) * words + (v >> 6)] |= std::uint64_t{1} << (v & 63); }
    const std::uint64_t* row(int u) const { return &bits[std::size_t(u) * words]; }
};

AdjMatrix adjacency_of(const ColoredGraph& g) {
    const int n = g.vertex_count;
    if (n < 0) throw std::invalid_argument("canonical_key: negative vertex count");
    if (static_cast<int>(g.color.size()) != n) {
        throw std::invalid_argument("canonical_key: color list size != vertex count");
    }
    AdjMatrix adj(n);
    for (auto [u, v] : g.edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw std::invalid_argument("canonical_key: edge endpoint out of range");
        }
        if (u == v) throw std::invalid_argument("canonical_key: self-loop");
        if (adj.get(u, v)) throw std::invalid_argument("canonical_key: multi-edge");
        adj.set(u, v);
        adj.set(v, u);
    }
    return adj;
}

// ------------------------------------------------- refinement + backtracking
//
// Ordered partitions in nauty's lab/ptn form: lab lists the vertices grouped
// by cell, ptn[i] == 0 marks the last position of a cell. Refinement splits
// every cell by neighbour counts against every cell until equitable; subcells
// are ordered by ascending count, which keeps the whole procedure invariant
// under relabeling. When refinement leaves a non-singleton cell, the search
// individualizes each of its vertices in turn and recurses; the canonical
// labeling is the one whose adjacency bitmap is lexicographically least over
// all refined leaves. Leaves that tie with the current best yield explicit
// automorphisms, which prune sibling branches.

class Canonicalizer {
public:
    explicit Canonicalizer(const AdjMatrix& adj) : adj_(adj), n_(adj.n) {}

    // initial_lab must come grouped by color; boundaries at color changes.
    void run(std::vector<int> lab, std::vector<int> ptn) {
        if (n_ == 0) return;
        prefix_.clear();
        search(std::move(lab), std::move(ptn));
    }

    const std::vector<std::uint64_t>& best_code() const { return best_code_; }

private:
    static constexpr std::size_t kMaxAutomorphisms = 64;

    void search(std::vector<int> lab, std::vector<int> ptn) {
        refine(lab, ptn);
        int cell_start = -1, cell_len = 0;
        for (int i = 0; i < n_;) {
            int j = i;
            while (ptn[j] != 0) ++j;
            if (j > i) {
                cell_start = i;
                cell_len = j - i + 1;
                break;
            }
            i = j + 1;
        }
        if (cell_start < 0) {
            handle_leaf(lab);
            return;
        }
        const std::vector<int> candidates(lab.begin() + cell_start,
                                          lab.begin() + cell_start + cell_len);
        std::vector<int> explored;
        explored.reserve(candidates.size());
        for (int v : candidates) {
            if (pruned_by_automorphism(v, explored)) continue;
            explored.push_back(v);
            std::vector<int> child_lab = lab;
            std::vector<int> child_ptn = ptn;
            auto it = std::find(child_lab.begin() + cell_start,
                                child_lab.begin() + cell_start + cell_len, v);
            std::iter_swap(child_lab.begin() + cell_start, it);
            child_ptn[cell_start] = 0;  // v becomes a singleton cell
            prefix_.push_back(v);
            search(std::move(child_lab), std::move(child_ptn));
            prefix_.pop_back();
        }
    }

    bool pruned_by_automorphism(int v, const std::vector<int>& explored) const {
        for (const auto& sigma : automorphisms_) {
            bool fixes_prefix = true;
            for (int u : prefix_) {
                if (sigma[u] != u) {
                    fixes_prefix = false;
                    break;
                }
            }
            if (!fixes_prefix) continue;
            const int image = sigma[v];
            if (std::find(explored.begin(), explored.end(), image) != explored.end()) return true;
        }
        return false;
    }

    void refine(std::vector<int>& lab, std::vector<int>& ptn) {
        std::vector<std::uint64_t> splitter_mask(adj_.words);
        std::vector<std::pair<int, int>> scratch(n_);
        bool changed = true;
        while (changed) {
            changed = false;
            // cell boundaries are re-read from ptn on every pass
            for (int s = 0; s < n_ && !changed;) {
                int s_end = s;
                while (ptn[s_end] != 0) ++s_end;
                std::fill(splitter_mask.begin(), splitter_mask.end(), 0);
                for (int i = s; i <= s_end; ++i) {
                    splitter_mask[lab[i] >> 6] |= std::uint64_t{1} << (lab[i] & 63);
                }
                for (int c = 0; c < n_ && !changed;) {
                    int c_end = c;
                    while (ptn[c_end] != 0) ++c_end;
                    if (c_end > c && split_cell(lab, ptn, c, c_end, splitter_mask, scratch)) {
                        changed = true;  // restart: boundaries moved
                    }
                    c = c_end + 1;
                }
                s = s_end + 1;
            }
        }
    }

    bool split_cell(std::vector<int>& lab, std::vector<int>& ptn, int c, int c_end,
                    const std::vector<std::uint64_t>& splitter_mask,
                    std::vector<std::pair<int, int>>& scratch) const {
        const int len = c_end - c + 1;
        bool uniform = true;
        for (int i = c; i <= c_end; ++i) {
            const std::uint64_t* row = adj_.row(lab[i]);
            int cnt = 0;
            for (int w = 0; w < adj_.words; ++w) cnt += std::popcount(row[w] & splitter_mask[w]);
            scratch[i - c] = {cnt, lab[i]};
            if (cnt != scratch[0].first) uniform = false;
        }
        if (uniform) return false;
        std::stable_sort(scratch.begin(), scratch.begin() + len,
                         [](const auto& u, const auto& v) { return u.first < v.first; });
        for (int i = 0; i < len; ++i) lab[c + i] = scratch[i].second;
        for (int i = 0; i < len - 1; ++i) {
            ptn[c + i] = (scratch[i].first == scratch[i + 1].first) ? 1 : 0;
        }
        // ptn[c_end] keeps its previous marker (end of the original cell)
        return true;
    }

    void handle_leaf(const std::vector<int>& lab) {
        std::vector<std::uint64_t> code = encode(lab);
        if (!have_best_ || code < best_code_) {
            best_code_ = std::move(code);
            best_lab_ = lab;
            have_best_ = true;
            return;
        }
        if (code != best_code_ || automorphisms_.size() >= kMaxAutomorphisms) return;
        std::vector<int> sigma(n_);
        bool identity = true;
        for (int i = 0; i < n_; ++i) {
            sigma[best_lab_[i]] = lab[i];
            if (best_lab_[i] != lab[i]) identity = false;
        }
        if (identity) return;
        if (std::find(automorphisms_.begin(), automorphisms_.end(), sigma) ==
            automorphisms_.end()) {
            automorphisms_.push_back(std::move(sigma));
        }
    }

    // Upper-triangle adjacency bits in labeling order, packed MSB-first so
    // word comparison equals bit-string comparison.
    std::vector<std::uint64_t> encode(const std::vector<int>& lab) const {
        const int total_bits = n_ * (n_ - 1) / 2;
        std::vector<std::uint64_t> code((total_bits + 63) / 64, 0);
        int bitpos = 0;
        for (int i = 0; i < n_; ++i) {
            for (int j = i + 1; j < n_; ++j, ++bitpos) {
                if (adj_.get(lab[i], lab[j])) {
                    code[bitpos >> 6] |= std::uint64_t{1} << (63 - (bitpos & 63));
                }
            }
        }
        return code;
    }

    const AdjMatrix& adj_;
    int n_;
    bool have_best_ = false;
    std::vector<std::uint64_t> best_code_;
    std::vector<int> best_lab_;
    std::vector<int> prefix_;  // individualized vertices on the current path
    std::vector<std::vector<int>> automorphisms_;
};

void append_u16(std::string& out, unsigned v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

}  // namespace

CanonicalKey canonical_key(const ColoredGraph& g) {
    const AdjMatrix adj = adjacency_of(g);
    const int n = g.vertex_count;

    int max_color = -1;
    for (int c : g.color) {
        if (c < 0) throw std::invalid_argument("canonical_key: negative color");
        max_color = std::max(max_color, c);
    }
    std::vector<int> color_count(max_color + 1, 0);
    for (int c : g.color) ++color_count[c];
    for (int c = 0; c <= max_color; ++c) {
        if (color_count[c] == 0) {
            throw std::invalid_argument("canonical_key: colors must be contiguous from 0");
        }
    }

    // initial partition: vertices grouped by color, cells in color order
    std::vector<int> lab(n), ptn(n, 1);
    std::vector<int> offset(max_color + 2, 0);
    for (int c = 0; c <= max_color; ++c) offset[c + 1] = offset[c] + color_count[c];
    {
        std::vector<int> cursor(offset.begin(), offset.end() - 1);
        for (int v = 0; v < n; ++v) lab[cursor[g.color[v]]++] = v;
        for (int c = 0; c <= max_color; ++c) ptn[offset[c + 1] - 1] = 0;
    }

    Canonicalizer canon(adj);
    canon.run(std::move(lab), std::move(ptn));

    CanonicalKey key;
    key.reserve(8 + 4 * std::size_t(max_color + 1) + canon.best_code().size() * 8);
    append_u16(key, static_cast<unsigned>(n));
    append_u16(key, static_cast<unsigned>(max_color + 1));
    for (int c = 0; c <= max_color; ++c) append_u16(key, static_cast<unsigned>(color_count[c]));
    for (std::uint64_t w : canon.best_code()) {
        for (int b = 7; b >= 0; --b) key.push_back(static_cast<char>((w >> (8 * b)) & 0xff));
    }
    return key;
}

namespace {

// Color ids are conceptually: 0 context, 1 side markers, 2 pair markers,
// 3 red ties. Empty classes (singleton intervals have no context vertices)
// are compacted away so keys stay well-formed; the count signature in the key
// keeps the families apart regardless.
void compact_colors(ColoredGraph& g) {
    int max_color = -1;
    for (int c : g.color) max_color = std::max(max_color, c);
    std::vector<int> remap(max_color + 1, -1);
    int next = 0;
    for (int c = 0; c <= max_color; ++c) {
        for (int col : g.color) {
            if (col == c) {
                remap[c] = next++;
                break;
            }
        }
    }
    for (int& c : g.color) c = remap[c];
}

}  // namespace

ColoredGraph interval_graph(const FormalContext& ctx) {
    const int nj = static_cast<int>(ctx.objects.size());
    const int nm = static_cast<int>(ctx.attributes.size());
    ColoredGraph g;
    g.vertex_count = nj + nm + 2;
    g.color.assign(g.vertex_count, 0);
    const int j_marker = nj + nm;
    const int m_marker = nj + nm + 1;
    g.color[j_marker] = 1;
    g.color[m_marker] = 1;
    for (int r = 0; r < nj; ++r) {
        for (int c = 0; c < nm; ++c) {
            if (ctx.incidence(r, c)) g.edges.emplace_back(r, nj + c);
        }
        g.edges.emplace_back(j_marker, r);
    }
    for (int c = 0; c < nm; ++c) g.edges.emplace_back(m_marker, nj + c);
    compact_colors(g);
    return g;
}

ColoredGraph pair_graph(const IntervalTable& tbl, const FormalContext& ctx, Element a, Element b) {
    if (tbl.index_of(a) < 0 || tbl.index_of(b) < 0) {
        throw std::invalid_argument("pair_graph: element outside the interval");
    }
    if (a > b) throw std::invalid_argument("pair_graph: requires a <= b");

    ColoredGraph g;
    const int nj = static_cast<int>(ctx.objects.size());
    const int nm = static_cast<int>(ctx.attributes.size());
    g.vertex_count = nj + nm + 8;
    g.color.assign(g.vertex_count, 0);
    const int j_marker = nj + nm;
    const int m_marker = j_marker + 1;
    const int ja = j_marker + 2, ma = j_marker + 3, jb = j_marker + 4, mb = j_marker + 5;
    const int red_a = j_marker + 6, red_b = j_marker + 7;
    g.color[j_marker] = g.color[m_marker] = 1;
    g.color[ja] = g.color[ma] = g.color[jb] = g.color[mb] = 2;
    g.color[red_a] = g.color[red_b] = 3;

    for (int r = 0; r < nj; ++r) {
        for (int c = 0; c < nm; ++c) {
            if (ctx.incidence(r, c)) g.edges.emplace_back(r, nj + c);
        }
        g.edges.emplace_back(j_marker, r);
        if (leq(ctx.objects[r], a)) g.edges.emplace_back(ja, r);
        if (leq(ctx.objects[r], b)) g.edges.emplace_back(jb, r);
    }
    for (int c = 0; c < nm; ++c) {
        g.edges.emplace_back(m_marker, nj + c);
        if (leq(a, ctx.attributes[c])) g.edges.emplace_back(ma, nj + c);
        if (leq(b, ctx.attributes[c])) g.edges.emplace_back(mb, nj + c);
    }
    g.edges.emplace_back(red_a, ja);
    g.edges.emplace_back(red_a, ma);
    g.edges.emplace_back(red_b, jb);
    g.edges.emplace_back(red_b, mb);
    compact_colors(g);
    return g;
}

// ------------------------------------------------------------ classification

namespace {

struct ClassAccum {
    std::uint64_t first_rank = 0;
    std::uint64_t cardinality = 0;
    Element lo = 0, hi = 0;  // representative interval (or pair)
};

using ClassMap = std::unordered_map<CanonicalKey, ClassAccum>;

void accumulate(ClassMap& map, CanonicalKey&& key, std::uint64_t rank, Element lo, Element hi) {
    auto [it, inserted] = map.try_emplace(std::move(key));
    ClassAccum& acc = it->second;
    if (inserted || rank < acc.first_rank) {
        acc.first_rank = rank;
        acc.lo = lo;
        acc.hi = hi;
    }
    ++acc.cardinality;
}

void merge_maps(ClassMap& into, ClassMap&& from) {
    for (auto& [key, acc] : from) {
        auto [it, inserted] = into.try_emplace(key, acc);
        if (!inserted) {
            it->second.cardinality += acc.cardinality;
            if (acc.first_rank < it->second.first_rank) {
                it->second.first_rank = acc.first_rank;
                it->second.lo = acc.lo;
                it->second.hi = acc.hi;
            }
        }
    }
}

}  // namespace

std::vector<IntervalClass> classify_intervals(const Lattice& lat, int jobs) {
    const auto& elems = lat.elements();
    const std::size_t n = elems.size();
    const int rank = lat.rank();
    const int workers = resolve_jobs(jobs);
    std::vector<ClassMap> maps(std::max(workers, 1));

    parallel_for_dynamic(workers, n, [&](std::size_t i, int worker) {
        ClassMap& map = maps[worker];
        const Element x = elems[i];
        // up-set of x once per row; every interval [x, y] lives inside it
        std::vector<Element> upset;
        std::vector<std::uint64_t> ranks;
        for (std::size_t j = i; j < n; ++j) {
            if (leq(x, elems[j])) {
                upset.push_back(elems[j]);
                ranks.push_back(std::uint64_t(i) * n + j);
            }
        }
        std::vector<Element> members;
        for (std::size_t yi = 0; yi < upset.size(); ++yi) {
            const Element y = upset[yi];
            members.clear();
            for (std::size_t zi = 0; zi <= yi; ++zi) {
                if (leq(upset[zi], y)) members.push_back(upset[zi]);
            }
            FormalContext ctx = build_context(rank, Interval{x, y}, members);
            CanonicalKey key = canonical_key(interval_graph(ctx));
            accumulate(map, std::move(key), ranks[yi], x, y);
        }
    });

    ClassMap merged = std::move(maps[0]);
    for (std::size_t w = 1; w < maps.size(); ++w) merge_maps(merged, std::move(maps[w]));

    std::vector<std::pair<std::uint64_t, IntervalClass>> by_rank;
    by_rank.reserve(merged.size());
    for (auto& [key, acc] : merged) {
        by_rank.emplace_back(acc.first_rank,
                             IntervalClass{Interval{acc.lo, acc.hi}, key, acc.cardinality});
    }
    std::sort(by_rank.begin(), by_rank.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<IntervalClass> classes;
    classes.reserve(by_rank.size());
    for (auto& [rank_, cls] : by_rank) classes.push_back(std::move(cls));
    return classes;
}

std::vector<PairClass> classify_pairs(const IntervalTable& tbl, const FormalContext& ctx,
                                      int jobs) {
    const std::size_t k = tbl.elems.size();
    const int workers = resolve_jobs(jobs);
    std::vector<ClassMap> maps(std::max(workers, 1));

    parallel_for_dynamic(workers, k, [&](std::size_t i, int worker) {
        ClassMap& map = maps[worker];
        const Element a = tbl.elems[i];
        for (std::size_t j = i; j < k; ++j) {
            const Element b = tbl.elems[j];
            CanonicalKey key = canonical_key(pair_graph(tbl, ctx, a, b));
            accumulate(map, std::move(key), std::uint64_t(i) * k + j, a, b);
        }
    });

    ClassMap merged = std::move(maps[0]);
    for (std::size_t w = 1; w < maps.size(); ++w) merge_maps(merged, std::move(maps[w]));

    std::vector<std::pair<std::uint64_t, PairClass>> by_rank;
    by_rank.reserve(merged.size());
    for (auto& [key, acc] : merged) {
        PairClass pc;
        pc.a = acc.lo;
        pc.b = acc.hi;
        pc.key = key;
        pc.cardinality = acc.cardinality;
        pc.diagonal = (acc.lo == acc.hi);
        pc.weight = pc.diagonal ? 1 : 2;
        by_rank.emplace_back(acc.first_rank, std::move(pc));
    }
    std::sort(by_rank.begin(), by_rank.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<PairClass> classes;
    classes.reserve(by_rank.size());
    for (auto& [rank_, pc] : by_rank) classes.push_back(std::move(pc));
    return classes;
}

}  // namespace dedekind

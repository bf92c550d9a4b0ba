#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dedekind/fca.hpp"
#include "dedekind/intervals.hpp"

namespace dedekind {

// Vertex-colored undirected graph. Canonical keys respect colors: only
// same-colored vertices may be exchanged by an isomorphism.
struct ColoredGraph {
    int vertex_count = 0;
    std::vector<int> color;                    // one entry per vertex
    std::vector<std::pair<int, int>> edges;    // endpoints distinct, no multi-edges
};

// Byte string equal exactly for color-isomorphic graphs.
using CanonicalKey = std::string;

// Canonical form via color refinement plus individualization-refinement
// backtracking with automorphism pruning; the key is the color signature
// followed by the lexicographically least refined adjacency bitmap.
CanonicalKey canonical_key(const ColoredGraph& g);

// Bipartite context graph: join and meet irreducibles share one color and two
// equally colored side markers are attached to their respective sides. The
// equal marker coloring lets a whole side swap, which is exactly what makes
// anti-isomorphic intervals collide onto one key.
ColoredGraph interval_graph(const FormalContext& ctx);

// Interval graph plus four pair markers (j/m neighborhoods of a and of b) and
// two red tie vertices binding each element's markers together. Keys of these
// graphs decide the pair relation: (a,b) matches (a~,b~) iff some (anti)
// automorphism of the interval maps {a,b} onto {a~,b~}.
// Requires a, b in the interval and a <= b as words.
ColoredGraph pair_graph(const IntervalTable& tbl, const FormalContext& ctx, Element a, Element b);

struct IntervalClass {
    Interval representative;  // first interval seen in (lo, hi) scan order
    CanonicalKey key;
    std::uint64_t cardinality = 0;
};

struct PairClass {
    Element a = 0;
    Element b = 0;
    CanonicalKey key;
    std::uint64_t cardinality = 0;
    int weight = 1;  // 2 off the diagonal, 1 on it
    bool diagonal = false;
};

// Groups all intervals of the lattice by interval_graph key. Classes are
// returned in first-seen order; cardinalities sum to the interval count.
std::vector<IntervalClass> classify_intervals(const Lattice& lat, int jobs = 1);

// Groups all pairs (a, b), a <= b as words, of one interval by pair_graph
// key, first-seen order.
std::vector<PairClass> classify_pairs(const IntervalTable& tbl, const FormalContext& ctx,
                                      int jobs = 1);

}  // namespace dedekind

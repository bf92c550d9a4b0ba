#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace dedekind {

// One element of the free distributive lattice D_n, packed as a 2^n-bit word.
// Bit p stands for the subset of generators encoded by p's binary digits; the
// set bits of an element form a downward-closed family of subsets.
using Element = std::uint64_t;

constexpr int kMaxRank = 6;  // 2^6 bits is the last rank that fits one word

constexpr Element join(Element x, Element y) { return x | y; }
constexpr Element meet(Element x, Element y) { return x & y; }
constexpr bool leq(Element x, Element y) { return (x & y) == x; }

// Powerset cover structure shared by all elements of one rank: for every bit
// position p, the positions strictly above (supersets) and strictly below.
struct CoverMasks {
    std::array<std::uint64_t, 64> strict_up{};
    std::array<std::uint64_t, 64> strict_down{};
};

// Cached per rank; cheap to build, hot in the irreducible scan.
const CoverMasks& cover_masks(int rank);

class Lattice {
public:
    Lattice(int rank, std::vector<Element> elements);

    int rank() const { return rank_; }
    std::size_t size() const { return elements_.size(); }
    const std::vector<Element>& elements() const { return elements_; }
    Element bottom() const { return elements_.front(); }
    Element top() const { return elements_.back(); }
    int bit_width() const { return 1 << rank_; }

    // Position in the ascending element list, -1 if absent.
    std::ptrdiff_t index_of(Element x) const;
    bool contains(Element x) const { return index_of(x) >= 0; }

private:
    int rank_;
    std::vector<Element> elements_;  // strictly ascending
};

// Builds D_n by iterated pairing from D_0 = {0, 1}: every element of D_k is
// (x << 2^(k-1)) | y for a pair x <= y of D_{k-1} elements. Throws on rank
// outside [0, 6]; rank 7 would already need 38+ TB to hold the elements.
Lattice generate_lattice(int rank);

// Lattice file: "FDL1", u8 rank, u64le count, then count u64le elements
// in ascending order.
void save_lattice(const Lattice& lat, const std::filesystem::path& path);
Lattice load_lattice(const std::filesystem::path& path);

}  // namespace dedekind

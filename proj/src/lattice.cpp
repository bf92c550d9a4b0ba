#include "dedekind/lattice.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <mutex>
#include <stdexcept>

namespace dedekind {

const CoverMasks& cover_masks(int rank) {
    static std::array<CoverMasks, kMaxRank + 1> cache;
    static std::array<std::once_flag, kMaxRank + 1> flags;
    if (rank < 0 || rank > kMaxRank) throw std::invalid_argument("cover_masks: rank out of range");
    std::call_once(flags[rank], [rank] {
        CoverMasks& m = cache[rank];
        const int width = 1 << rank;
        for (int p = 0; p < width; ++p) {
            for (int q = 0; q < width; ++q) {
                if (p == q) continue;
                if ((p & q) == p) m.strict_up[p] |= std::uint64_t{1} << q;
                if ((p & q) == q) m.strict_down[p] |= std::uint64_t{1} << q;
            }
        }
    });
    return cache[rank];
}

Lattice::Lattice(int rank, std::vector<Element> elements)
    : rank_(rank), elements_(std::move(elements)) {
    if (rank_ < 0 || rank_ > kMaxRank) throw std::invalid_argument("Lattice: rank out of range");
    if (elements_.empty()) throw std::invalid_argument("Lattice: no elements");
    if (!std::is_sorted(elements_.begin(), elements_.end()) ||
        std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
        throw std::invalid_argument("Lattice: elements must be strictly ascending");
    }
}

std::ptrdiff_t Lattice::index_of(Element x) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
    if (it == elements_.end() || *it != x) return -1;
    return it - elements_.begin();
}

Lattice generate_lattice(int rank) {
    if (rank < 0) throw std::invalid_argument("generate_lattice: negative rank");
    if (rank > kMaxRank) {
        throw std::invalid_argument(
            "generate_lattice: rank > 6 unsupported (elements no longer fit a 64-bit word)");
    }
    std::vector<Element> cur = {0, 1};
    for (int k = 1; k <= rank; ++k) {
        const int half = 1 << (k - 1);
        std::vector<Element> next;
        // (x asc, y asc) pairs emit ascending words directly: x fills the high
        // half, so no sort pass is needed.
        for (Element x : cur) {
            for (Element y : cur) {
                if (leq(x, y)) next.push_back((x << half) | y);
            }
        }
        cur = std::move(next);
    }
    return Lattice(rank, std::move(cur));
}

namespace {

constexpr char kMagic[4] = {'F', 'D', 'L', '1'};

void put_u64le(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64le(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{b[i]} << (8 * i);
    return v;
}

}  // namespace

void save_lattice(const Lattice& lat, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("save_lattice: cannot open " + path.string());
    os.write(kMagic, 4);
    os.put(static_cast<char>(lat.rank()));
    put_u64le(os, lat.size());
    for (Element e : lat.elements()) put_u64le(os, e);
    if (!os) throw std::runtime_error("save_lattice: write failed for " + path.string());
}

Lattice load_lattice(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_lattice: cannot open " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0) {
        throw std::runtime_error("load_lattice: bad magic in " + path.string());
    }
    const int rank = is.get();
    if (rank < 0 || rank > kMaxRank) {
        throw std::runtime_error("load_lattice: bad rank in " + path.string());
    }
    const std::uint64_t count = get_u64le(is);
    if (!is) throw std::runtime_error("load_lattice: truncated header in " + path.string());
    std::vector<Element> elems(count);
    for (std::uint64_t i = 0; i < count; ++i) elems[i] = get_u64le(is);
    if (!is) throw std::runtime_error("load_lattice: truncated element list in " + path.string());
    try {
        return Lattice(rank, std::move(elems));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("load_lattice: corrupt file " + path.string() + ": " + e.what());
    }
}

}  // namespace dedekind

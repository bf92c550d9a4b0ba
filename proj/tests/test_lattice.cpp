#include <doctest.h>

#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "dedekind/lattice.hpp"

using namespace dedekind;

namespace {

// an element is a downward-closed family: every set bit keeps all its subsets set
bool downward_closed(Element w, int rank) {
    const int width = 1 << rank;
    for (int p = 0; p < width; ++p) {
        if (!((w >> p) & 1)) continue;
        for (int q = 0; q < p; ++q) {
            if ((q & p) == q && !((w >> q) & 1)) return false;
        }
    }
    return true;
}

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const char* name)
        : path(std::filesystem::temp_directory_path() / name) {}
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("element counts match the reference sequence") {
    const std::uint64_t want[] = {2, 3, 6, 20, 168, 7581, 7828354};
    for (int n = 0; n <= 6; ++n) {
        CHECK(generate_lattice(n).size() == want[n]);
    }
}

TEST_CASE("rank 2 and 3 element sets are exact") {
    CHECK(generate_lattice(2).elements() == std::vector<Element>{0, 1, 3, 5, 7, 15});
    CHECK(generate_lattice(3).elements() ==
          std::vector<Element>{0, 1, 3, 5, 7, 15, 17, 19, 21, 23, 31, 51, 55, 63, 85, 87, 95, 119,
                               127, 255});
}

TEST_CASE("rank out of range is rejected") {
    CHECK_THROWS_AS(generate_lattice(7), std::invalid_argument);
    CHECK_THROWS_AS(generate_lattice(-1), std::invalid_argument);
}

TEST_CASE("join meet and order on the rank-2 diamond") {
    CHECK(join(3, 5) == 7);
    CHECK(meet(3, 5) == 1);
    CHECK(leq(1, 7));
    CHECK(!leq(3, 5));
    CHECK(!leq(5, 3));
    CHECK(leq(7, 15));
    CHECK(meet(7, 15) == 7);
}

TEST_CASE("lattice is closed and distributive on random triples") {
    const Lattice lat = generate_lattice(4);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, lat.size() - 1);
    for (int it = 0; it < 5000; ++it) {
        const Element x = lat.elements()[pick(rng)];
        const Element y = lat.elements()[pick(rng)];
        const Element z = lat.elements()[pick(rng)];
        CHECK(lat.contains(join(x, y)));
        CHECK(lat.contains(meet(x, y)));
        CHECK(meet(x, join(y, z)) == join(meet(x, y), meet(x, z)));
        CHECK(join(x, x) == x);
        CHECK(meet(x, lat.top()) == x);
        CHECK(join(x, lat.bottom()) == x);
    }
}

TEST_CASE("every element is a downward-closed bit family") {
    for (int n = 0; n <= 4; ++n) {
        const Lattice lat = generate_lattice(n);
        for (Element w : lat.elements()) {
            CHECK(downward_closed(w, n));
        }
        // and conversely, every downward-closed word is an element
        std::uint64_t count = 0;
        const int width = 1 << n;
        for (Element w = 0; w < (Element{1} << width); ++w) {
            if (downward_closed(w, n)) ++count;
        }
        CHECK(count == lat.size());
    }
}

TEST_CASE("pairing bijection with the previous rank") {
    for (int n = 1; n <= 5; ++n) {
        const Lattice prev = generate_lattice(n - 1);
        const Lattice cur = generate_lattice(n);
        const int half = 1 << (n - 1);
        const Element mask = (Element{1} << half) - 1;
        std::uint64_t pairs = 0;
        for (Element x : prev.elements()) {
            for (Element y : prev.elements()) {
                if (leq(x, y)) ++pairs;
            }
        }
        CHECK(pairs == cur.size());
        for (Element w : cur.elements()) {
            const Element x = w >> half;
            const Element y = w & mask;
            CHECK(prev.contains(x));
            CHECK(prev.contains(y));
            CHECK(leq(x, y));
        }
    }
}

TEST_CASE("file format roundtrip and corruption detection") {
    const Lattice lat = generate_lattice(3);
    TempFile tmp("dedekind_lattice_test.fdl");
    save_lattice(lat, tmp.path);

    const Lattice back = load_lattice(tmp.path);
    CHECK(back.rank() == 3);
    CHECK(back.elements() == lat.elements());

    SUBCASE("exact bytes for rank 0") {
        TempFile t0("dedekind_lattice_rank0.fdl");
        save_lattice(generate_lattice(0), t0.path);
        std::ifstream is(t0.path, std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
        std::string want("FDL1", 4);
        want.push_back('\x00');                                       // rank
        want += std::string("\x02\x00\x00\x00\x00\x00\x00\x00", 8);   // count
        want += std::string("\x00\x00\x00\x00\x00\x00\x00\x00", 8);   // element 0
        want += std::string("\x01\x00\x00\x00\x00\x00\x00\x00", 8);   // element 1
        CHECK(bytes == want);
    }

    SUBCASE("bad magic") {
        std::fstream f(tmp.path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(0);
        f.write("XXXX", 4);
        f.close();
        CHECK_THROWS_AS(load_lattice(tmp.path), std::runtime_error);
    }

    SUBCASE("truncated body") {
        std::filesystem::resize_file(tmp.path, std::filesystem::file_size(tmp.path) - 4);
        CHECK_THROWS_AS(load_lattice(tmp.path), std::runtime_error);
    }

    SUBCASE("unsorted elements") {
        std::fstream f(tmp.path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(13);  // first element slot
        const unsigned char big[8] = {0xff, 0, 0, 0, 0, 0, 0, 0};
        f.write(reinterpret_cast<const char*>(big), 8);
        f.close();
        CHECK_THROWS_AS(load_lattice(tmp.path), std::runtime_error);
    }

    CHECK_THROWS_AS(load_lattice("/nonexistent/place/x.fdl"), std::runtime_error);
}

TEST_CASE("cover masks describe the powerset order") {
    const CoverMasks& m = cover_masks(2);
    // position 0 is the empty set: everything above, nothing below
    CHECK(m.strict_up[0] == 0b1110);
    CHECK(m.strict_down[0] == 0);
    // position 3 is {0,1}: nothing above, everything below
    CHECK(m.strict_up[3] == 0);
    CHECK(m.strict_down[3] == 0b0111);
    CHECK(m.strict_up[1] == 0b1000);
    CHECK(m.strict_down[1] == 0b0001);
}

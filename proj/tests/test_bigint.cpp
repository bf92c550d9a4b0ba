#include <doctest.h>

#include <random>

#include "dedekind/bigint.hpp"
#include "dedekind/known_values.hpp"

using namespace dedekind;

TEST_CASE("decimal roundtrip for the reference table") {
    for (int n = 0; n <= 9; ++n) {
        const BigCounter v = known_dedekind(n);
        CHECK(v.to_string() == std::string(kDedekindNumbers[n]));
        CHECK(BigCounter::from_string(v.to_string()) == v);
    }
}

TEST_CASE("from_string rejects junk") {
    CHECK_THROWS_AS(BigCounter::from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(BigCounter::from_string("-5"), std::invalid_argument);
    CHECK_THROWS_AS(BigCounter::from_string("12x3"), std::invalid_argument);
}

TEST_CASE("arithmetic agrees with 128-bit reference") {
    std::mt19937_64 rng(42);
    for (int it = 0; it < 500; ++it) {
        const std::uint64_t a = rng(), b = rng();
        const std::uint32_t m = static_cast<std::uint32_t>(rng());
        u128 ref = u128(a) + b;
        BigCounter big(a);
        big.add(b);
        ref *= m;
        big.mul(m);
        CHECK(big == BigCounter::from_u128(ref));
    }
}

TEST_CASE("add_scaled multiplies a 128-bit trace exactly") {
    const u128 trace = (u128(0x0123456789abcdefULL) << 64) | 0xfedcba9876543210ULL;
    BigCounter a;
    a.add_scaled(trace, 3);
    BigCounter b = BigCounter::from_u128(trace);
    b.add(BigCounter::from_u128(trace));
    b.add(BigCounter::from_u128(trace));
    CHECK(a == b);
}

TEST_CASE("accumulator spill is exact") {
    BigAccumulator acc;
    const u128 big = ~u128{0} - 5;
    acc.add(big);
    acc.add(big);
    acc.add(7);
    BigCounter want = BigCounter::from_u128(big);
    want.add(BigCounter::from_u128(big));
    want.add(std::uint64_t{7});
    CHECK(acc.take() == want);
}

#include "dedekind/bigint.hpp"

#include <stdexcept>

namespace dedekind {

namespace {

mpz_class mpz_from_u64(std::uint64_t x) {
    // mpz_class has no uint64_t constructor on LP64-agnostic paths; go via limbs.
    mpz_class r = static_cast<unsigned long>(x >> 32);
    r <<= 32;
    r += static_cast<unsigned long>(x & 0xffffffffu);
    return r;
}

}  // namespace

void BigCounter::set_u64(std::uint64_t x) { v_ = mpz_from_u64(x); }

BigCounter BigCounter::from_u128(u128 x) {
    BigCounter r;
    r.v_ = mpz_from_u64(static_cast<std::uint64_t>(x >> 64));
    r.v_ <<= 64;
    r.v_ += mpz_from_u64(static_cast<std::uint64_t>(x));
    return r;
}

BigCounter BigCounter::from_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("BigCounter: empty decimal string");
    for (char c : s) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("BigCounter: bad decimal string '" + std::string(s) + "'");
        }
    }
    BigCounter r;
    r.v_ = mpz_class(std::string(s), 10);
    return r;
}

void BigCounter::add(std::uint64_t x) { v_ += mpz_from_u64(x); }

void BigCounter::add(u128 x) { add(from_u128(x)); }

void BigCounter::add_scaled(u128 trace, std::uint64_t mult) {
    mpz_class t = from_u128(trace).v_;
    t *= mpz_from_u64(mult);
    v_ += t;
}

void BigCounter::mul(std::uint64_t x) { v_ *= mpz_from_u64(x); }

}  // namespace dedekind

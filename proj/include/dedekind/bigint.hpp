#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dedekind {

using u128 = unsigned __int128;

// Exact unsigned accumulator for the final counts. Every rank formula sums
// into one of these; nothing in the pipeline ever rounds or wraps.
class BigCounter {
public:
    BigCounter() : v_(0) {}
    explicit BigCounter(std::uint64_t x) { set_u64(x); }

    static BigCounter from_u128(u128 x);
    // Decimal digits only; throws std::invalid_argument on anything else.
    static BigCounter from_string(std::string_view s);

    void add(const BigCounter& other) { v_ += other.v_; }
    void add(std::uint64_t x);
    void add(u128 x);
    // value += trace * mult, exact.
    void add_scaled(u128 trace, std::uint64_t mult);
    void mul(std::uint64_t x);

    bool is_zero() const { return v_ == 0; }
    std::string to_string() const { return v_.get_str(); }

    friend bool operator==(const BigCounter& a, const BigCounter& b) { return a.v_ == b.v_; }
    friend bool operator!=(const BigCounter& a, const BigCounter& b) { return a.v_ != b.v_; }

private:
    void set_u64(std::uint64_t x);
    mpz_class v_;
};

// Fast exact accumulator: sums in a 128-bit register and spills to the
// arbitrary-precision counter before a wrap could happen.
class BigAccumulator {
public:
    void add(u128 x) {
        if (x > ~u128{0} - acc_) spill();
        acc_ += x;
    }
    void add(const BigCounter& x) {
        spill();
        total_.add(x);
    }
    BigCounter take() {
        spill();
        return std::move(total_);
    }

private:
    void spill() {
        if (acc_ != 0) {
            total_.add(acc_);
            acc_ = 0;
        }
    }
    u128 acc_ = 0;
    BigCounter total_;
};

}  // namespace dedekind

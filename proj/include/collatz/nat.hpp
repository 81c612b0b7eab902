#ifndef COLLATZ_NAT_HPP
#define COLLATZ_NAT_HPP

#include <bit>
#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace collatz {

// Raised when a mathematically guaranteed invariant fails at runtime
// (e.g. an exact division leaves a remainder). Never caught by library code.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline void internal_check(bool ok, const char* what) {
    if (!ok) throw internal_error(what);
}

// Unsigned integer for node values and sequence terms. Values live on a
// single machine word until an operation overflows; the result is then
// promoted to an arbitrary-precision representation. Callers never see
// the switch. Invariant: big_ != nullptr implies value > 2^64 - 1.
class Nat {
  public:
    using Big = boost::multiprecision::cpp_int;

    Nat() noexcept : word_(0) {}
    Nat(uint64_t v) noexcept : word_(v) {}
    explicit Nat(const Big& b);

    Nat(const Nat& o) : word_(o.word_), big_(o.big_ ? std::make_unique<Big>(*o.big_) : nullptr) {}
    Nat(Nat&&) noexcept = default;
    Nat& operator=(const Nat& o) {
        if (this != &o) {
            word_ = o.word_;
            big_ = o.big_ ? std::make_unique<Big>(*o.big_) : nullptr;
        }
        return *this;
    }
    Nat& operator=(Nat&&) noexcept = default;

    // Throws std::invalid_argument unless s is a nonempty decimal numeral.
    static Nat from_decimal(std::string_view s);

    bool fits_word() const noexcept { return big_ == nullptr; }
    uint64_t word() const {
        internal_check(fits_word(), "Nat::word on promoted value");
        return word_;
    }

    bool is_zero() const noexcept { return fits_word() && word_ == 0; }
    bool is_odd() const noexcept { return low_bit(); }
    bool is_even() const noexcept { return !low_bit(); }

    // Number of significant bits; 0 for the value 0.
    uint64_t bit_length() const;

    // Bit i of the binary expansion, false for every i past the top bit.
    bool bit(uint64_t i) const;

    // Index of the lowest set bit (the 2-adic valuation). Requires nonzero.
    uint64_t trailing_zeros() const;

    uint32_t mod_small(uint32_t m) const;

    // Quotient by a small divisor that must divide exactly.
    Nat div_exact(uint32_t d) const;

    // Low b bits, i.e. the remainder mod 2^b.
    Nat low_bits(uint64_t b) const;

    Nat& operator<<=(uint64_t s);
    Nat& operator>>=(uint64_t s);
    Nat operator<<(uint64_t s) const {
        Nat r(*this);
        r <<= s;
        return r;
    }
    Nat operator>>(uint64_t s) const {
        Nat r(*this);
        r >>= s;
        return r;
    }

    friend Nat operator+(const Nat& a, const Nat& b) {
        if (a.fits_word() && b.fits_word()) {
            uint64_t s;
            if (!__builtin_add_overflow(a.word_, b.word_, &s)) return Nat(s);
        }
        return add_slow(a, b);
    }
    // Requires a >= b.
    friend Nat operator-(const Nat& a, const Nat& b) {
        if (a.fits_word() && b.fits_word()) {
            internal_check(a.word_ >= b.word_, "Nat subtraction underflow");
            return Nat(a.word_ - b.word_);
        }
        return sub_slow(a, b);
    }
    friend Nat operator*(const Nat& a, uint64_t m) {
        if (a.fits_word()) {
            uint64_t p;
            if (!__builtin_mul_overflow(a.word_, m, &p)) return Nat(p);
        }
        return mul_slow(a, m);
    }

    friend bool operator==(const Nat& a, const Nat& b) {
        if (a.fits_word() != b.fits_word()) return false;
        if (a.fits_word()) return a.word_ == b.word_;
        return *a.big_ == *b.big_;
    }
    friend std::strong_ordering operator<=>(const Nat& a, const Nat& b) {
        if (a.fits_word()) {
            if (!b.fits_word()) return std::strong_ordering::less;
            return a.word_ <=> b.word_;
        }
        if (b.fits_word()) return std::strong_ordering::greater;
        int c = a.big_->compare(*b.big_);
        return c < 0    ? std::strong_ordering::less
               : c == 0 ? std::strong_ordering::equal
                        : std::strong_ordering::greater;
    }

    std::string to_string() const;
    friend std::ostream& operator<<(std::ostream& os, const Nat& n) { return os << n.to_string(); }

    size_t hash() const noexcept;

  private:
    bool low_bit() const noexcept { return fits_word() ? (word_ & 1) : boost::multiprecision::bit_test(*big_, 0); }
    void normalize();

    static Nat add_slow(const Nat& a, const Nat& b);
    static Nat sub_slow(const Nat& a, const Nat& b);
    static Nat mul_slow(const Nat& a, uint64_t m);

    uint64_t word_;
    std::unique_ptr<Big> big_;
};

struct NatHash {
    size_t operator()(const Nat& n) const noexcept { return n.hash(); }
};

}  // namespace collatz

#endif

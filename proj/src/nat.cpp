#include "collatz/nat.hpp"

#include <charconv>
#include <limits>

namespace collatz {

namespace mp = boost::multiprecision;

Nat::Nat(const Big& b) : word_(0) {
    internal_check(b >= 0, "Nat from negative value");
    if (b <= std::numeric_limits<uint64_t>::max()) {
        word_ = static_cast<uint64_t>(b);
    } else {
        big_ = std::make_unique<Big>(b);
    }
}

void Nat::normalize() {
    if (big_ && *big_ <= std::numeric_limits<uint64_t>::max()) {
        word_ = static_cast<uint64_t>(*big_);
        big_.reset();
    }
}

Nat Nat::from_decimal(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty numeral");
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("not a decimal numeral: " + std::string(s));
    }
    if (s.size() <= 19) {  // at most 19 digits always fits a uint64
        uint64_t v = 0;
        std::from_chars(s.data(), s.data() + s.size(), v);
        return Nat(v);
    }
    return Nat(Big(std::string(s)));
}

uint64_t Nat::bit_length() const {
    if (fits_word()) return std::bit_width(word_);
    return mp::msb(*big_) + 1;
}

bool Nat::bit(uint64_t i) const {
    if (fits_word()) return i < 64 && ((word_ >> i) & 1);
    if (i >= bit_length()) return false;
    return mp::bit_test(*big_, static_cast<unsigned>(i));
}

uint64_t Nat::trailing_zeros() const {
    internal_check(!is_zero(), "trailing_zeros of zero");
    if (fits_word()) return std::countr_zero(word_);
    return mp::lsb(*big_);
}

uint32_t Nat::mod_small(uint32_t m) const {
    internal_check(m != 0, "mod by zero");
    if (fits_word()) return static_cast<uint32_t>(word_ % m);
    return static_cast<uint32_t>(*big_ % m);
}

Nat Nat::div_exact(uint32_t d) const {
    internal_check(d != 0, "division by zero");
    if (fits_word()) {
        internal_check(word_ % d == 0, "inexact division");
        return Nat(word_ / d);
    }
    Big q, r;
    mp::divide_qr(*big_, Big(d), q, r);
    internal_check(r == 0, "inexact division");
    return Nat(q);
}

Nat Nat::low_bits(uint64_t b) const {
    if (fits_word()) {
        if (b >= 64) return *this;
        return Nat(word_ & ((uint64_t(1) << b) - 1));
    }
    if (b >= bit_length()) return *this;
    Big mask = (Big(1) << static_cast<unsigned>(b)) - 1;
    return Nat(Big(*big_ & mask));
}

Nat& Nat::operator<<=(uint64_t s) {
    if (fits_word()) {
        if (word_ == 0 || s == 0) return *this;
        if (std::bit_width(word_) + s <= 64) {
            word_ <<= s;
            return *this;
        }
        big_ = std::make_unique<Big>(word_);
    }
    *big_ <<= static_cast<unsigned>(s);
    return *this;
}

Nat& Nat::operator>>=(uint64_t s) {
    if (fits_word()) {
        word_ = s >= 64 ? 0 : word_ >> s;
        return *this;
    }
    *big_ >>= static_cast<unsigned>(s);
    normalize();
    return *this;
}

Nat Nat::add_slow(const Nat& a, const Nat& b) {
    Big x = a.fits_word() ? Big(a.word_) : *a.big_;
    if (b.fits_word()) {
        x += b.word_;
    } else {
        x += *b.big_;
    }
    return Nat(x);
}

Nat Nat::sub_slow(const Nat& a, const Nat& b) {
    internal_check(!(a < b), "Nat subtraction underflow");
    Big x = a.fits_word() ? Big(a.word_) : *a.big_;
    if (b.fits_word()) {
        x -= b.word_;
    } else {
        x -= *b.big_;
    }
    return Nat(x);
}

Nat Nat::mul_slow(const Nat& a, uint64_t m) {
    Big x = a.fits_word() ? Big(a.word_) : *a.big_;
    x *= m;
    return Nat(x);
}

std::string Nat::to_string() const {
    if (fits_word()) return std::to_string(word_);
    return big_->str();
}

size_t Nat::hash() const noexcept {
    if (fits_word()) return std::hash<uint64_t>{}(word_);
    uint64_t low = static_cast<uint64_t>(*big_ & std::numeric_limits<uint64_t>::max());
    return std::hash<uint64_t>{}(low ^ (bit_length() * 0x9e3779b97f4a7c15ULL));
}

}  // namespace collatz

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vfab/util/hex.hpp"

namespace vfab::ff {

/// Element of the prime field GF(p), p = 2^61 - 1 (Mersenne).
/// Stored as the canonical representative in [0, p-1].
class Fe {
public:
    static constexpr std::uint64_t MOD = 0x1fffffffffffffffULL; // 2^61 - 1

    constexpr Fe() : v_(0) {}
    constexpr explicit Fe(std::uint64_t v) : v_(v % MOD) {}

    static constexpr Fe zero() { return Fe(); }
    static constexpr Fe one() { return Fe(1); }

    constexpr std::uint64_t value() const { return v_; }
    constexpr bool is_zero() const { return v_ == 0; }

    Fe& operator+=(Fe other) {
        std::uint64_t x = v_ + other.v_;
        if (x >= MOD) x -= MOD;
        v_ = x;
        return *this;
    }

    Fe& operator-=(Fe other) {
        v_ = (v_ >= other.v_) ? (v_ - other.v_) : (v_ + MOD - other.v_);
        return *this;
    }

    Fe& operator*=(Fe other) {
        __uint128_t prod = static_cast<__uint128_t>(v_) * other.v_;
        v_ = static_cast<std::uint64_t>(prod % MOD);
        return *this;
    }

    friend Fe operator+(Fe a, Fe b) { a += b; return a; }
    friend Fe operator-(Fe a, Fe b) { a -= b; return a; }
    friend Fe operator*(Fe a, Fe b) { a *= b; return a; }
    friend Fe operator-(Fe a) { return Fe::zero() - a; }

    friend bool operator==(Fe a, Fe b) { return a.v_ == b.v_; }
    friend bool operator!=(Fe a, Fe b) { return a.v_ != b.v_; }

    Fe pow(std::uint64_t e) const {
        Fe base = *this, acc = one();
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    /// Multiplicative inverse via Fermat. Throws on zero.
    Fe inv() const {
        if (v_ == 0) throw std::domain_error("division by zero in GF(2^61-1)");
        return pow(MOD - 2);
    }

    friend Fe operator/(Fe a, Fe b) { return a * b.inv(); }

    /// 8-byte little-endian canonical form.
    std::array<std::uint8_t, 8> to_le_bytes() const {
        std::array<std::uint8_t, 8> out{};
        std::uint64_t v = v_;
        for (int i = 0; i < 8; ++i) { out[i] = static_cast<std::uint8_t>(v); v >>= 8; }
        return out;
    }

    static Fe from_le_bytes(std::span<const std::uint8_t> b) {
        if (b.size() < 8) throw std::invalid_argument("need 8 bytes");
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = v << 8 | b[i];
        return Fe(v);
    }

    /// 16 lowercase hex digits of the canonical value (big-endian digit order).
    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string s(16, '0');
        std::uint64_t v = v_;
        for (int i = 15; i >= 0; --i) { s[i] = digits[v & 0xf]; v >>= 4; }
        return s;
    }

    static Fe from_hex(const std::string& s) {
        if (s.size() != 16) throw std::invalid_argument("expected 16 hex digits");
        std::uint64_t v = 0;
        for (char c : s) v = v << 4 | static_cast<std::uint64_t>(hex_nibble(c));
        if (v >= MOD) throw std::invalid_argument("field element out of range");
        return Fe(v);
    }

private:
    std::uint64_t v_;
};

/// Big-endian byte string interpreted as an integer, reduced mod p.
inline Fe fe_from_bytes_be(std::span<const std::uint8_t> bytes) {
    __uint128_t acc = 0;
    for (std::uint8_t b : bytes)
        acc = (acc << 8 | b) % Fe::MOD;
    return Fe(static_cast<std::uint64_t>(acc));
}

} // namespace vfab::ff

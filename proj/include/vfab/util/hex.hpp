#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vfab {

using Hash32 = std::array<std::uint8_t, 32>;

inline std::string to_hex(std::span<const std::uint8_t> bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

inline std::string to_hex(const Hash32& h) {
    return to_hex(std::span<const std::uint8_t>(h.data(), h.size()));
}

inline int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("invalid hex digit");
}

inline std::vector<std::uint8_t> from_hex(const std::string& s) {
    if (s.size() % 2 != 0) throw std::invalid_argument("odd-length hex string");
    std::vector<std::uint8_t> out(s.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(hex_nibble(s[2 * i]) << 4 | hex_nibble(s[2 * i + 1]));
    return out;
}

inline Hash32 hash_from_hex(const std::string& s) {
    auto v = from_hex(s);
    if (v.size() != 32) throw std::invalid_argument("expected 64 hex digits");
    Hash32 h{};
    std::copy(v.begin(), v.end(), h.begin());
    return h;
}

} // namespace vfab

#pragma once

#include <openssl/evp.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vfab/util/hex.hpp"

namespace vfab {

inline Hash32 sha256(std::span<const std::uint8_t> data) {
    Hash32 out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != out.size())
        throw std::runtime_error("sha256 failed");
    return out;
}

inline Hash32 sha256(const std::vector<std::uint8_t>& data) {
    return sha256(std::span<const std::uint8_t>(data.data(), data.size()));
}

inline Hash32 sha256(const std::string& data) {
    return sha256(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

} // namespace vfab

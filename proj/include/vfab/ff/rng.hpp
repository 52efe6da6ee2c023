#pragma once

#include <cstdint>

#include "vfab/ff/field.hpp"

namespace vfab::ff {

/// Deterministic seeded random source (splitmix64). Single-owner: one
/// instance per consumer, never shared.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform over [0, p-1]: top 61 bits, rejecting the single value p.
    Fe next_fe() {
        for (;;) {
            std::uint64_t v = next_u64() >> 3;
            if (v < Fe::MOD) return Fe(v);
        }
    }

    /// Uniform in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) {
        return next_u64() % bound;
    }

    /// Derive an independent child stream.
    Rng fork() { return Rng(next_u64() ^ 0xa5a5a5a5a5a5a5a5ULL); }

private:
    std::uint64_t state_;
};

inline Fe fe_random(Rng& rng) { return rng.next_fe(); }

} // namespace vfab::ff

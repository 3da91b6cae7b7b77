#pragma once

#include <cstdint>
#include <random>

#include "field.hpp"

namespace baggy {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for the i-th independent trial of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) { return splitmix64(seed ^ splitmix64(i)); }

/// Uniform integer in [0, bound). Written out by hand because the standard
/// distributions are not reproducible across library implementations.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
    std::uint64_t x = 0;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

inline Fp uniform_field_element(Rng& rng) {
    std::uint64_t x = 0;
    do {
        x = rng() >> 3;
    } while (x >= Fp::kModulus);
    return Fp(x);
}

} // namespace baggy

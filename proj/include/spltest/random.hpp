#pragma once

#include <cstdint>
#include <random>

namespace spltest {

// Seeded random source used by every randomized code path in the library.
// std::uniform_int_distribution is avoided on purpose: its output is not
// specified bit-for-bit across standard library implementations, and seeded
// runs must reproduce exactly.
class RandomSource {
public:
    explicit RandomSource(uint64_t seed) : rng_(seed) {}

    uint64_t next_u64() { return rng_(); }

    // Uniform integer in [0, bound). bound must be positive.
    uint64_t next_below(uint64_t bound) {
        // rejection sampling removes modulo bias
        const uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % bound;
        uint64_t x;
        do {
            x = rng_();
        } while (x >= limit);
        return x % bound;
    }

    bool next_bool() { return (rng_() >> 63) != 0; }

    // Uniform double in [0, 1).
    double next_unit() { return double(rng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 rng_;
};

// Cheap stateless mix for deriving independent sub-seeds from a base seed.
inline uint64_t derive_seed(uint64_t seed, uint64_t salt) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace spltest

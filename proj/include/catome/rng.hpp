#pragma once

#include <cstdint>

namespace catome {

// SplitMix64 (Steele, Lea, Vigna). Chosen as the project-wide generator
// because its output is a pure function of the 64-bit state with no
// platform-dependent behavior, so every draw reproduces bit-for-bit on any
// conforming compiler. Never replace with std::default_random_engine or
// std::*_distribution: those are not portable across standard libraries.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 24 random mantissa bits; exact in float.
    float next_unit_float() {
        return static_cast<float>(next_u64() >> 40) * 0x1.0p-24f;
    }

    // Uniform in [-1, 1).
    float next_symmetric_float() { return 2.0f * next_unit_float() - 1.0f; }

    // Uniform integer in [0, bound). bound must be >= 1. The modulo bias is
    // below 2^-32 for the small bounds used here (stride cells, grid dims).
    uint64_t next_below(uint64_t bound) { return next_u64() % bound; }

private:
    uint64_t state_;
};

// Derives an independent stream for a sub-component (e.g. per-block weights
// from a run seed). Plain additive offsets would make streams overlap.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    SplitMix64 mix(seed ^ (0xA0761D6478BD642FULL + stream * 0xE7037ED1A0B428DBULL));
    return mix.next_u64();
}

}  // namespace catome

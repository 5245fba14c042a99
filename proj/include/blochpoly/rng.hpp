#pragma once

#include <cstdint>

namespace blochpoly {

// splitmix64: tiny deterministic generator; identical streams on every
// platform for a given seed, which the seeded-potential reproducibility
// guarantees depend on.
struct SplitMix64 {
    uint64_t s;

    explicit SplitMix64(uint64_t seed) : s(seed) {}

    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [lo, hi].
    int int_in(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
};

} // namespace blochpoly

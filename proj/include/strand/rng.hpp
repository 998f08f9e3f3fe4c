#pragma once

#include <cstdint>

#include "strand/vec3.hpp"

namespace strand {

/// SplitMix64 stream; identical output on every platform, which keeps
/// seeded reports and frozen test inputs reproducible.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) { // inclusive bounds
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Vec3 vec3(double lo = -1.0, double hi = 1.0) {
        const double a = uniform(lo, hi);
        const double b = uniform(lo, hi);
        const double c = uniform(lo, hi);
        return {a, b, c};
    }
};

} // namespace strand

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace chaoskit {

// splitmix64: tiny, splittable, and good enough for test-instance generation.
// Every randomized campaign derives per-instance substreams from (seed, index)
// so results do not depend on scheduling.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe to feed into log().
    double uniform_open() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

    // Box-Muller. Deterministic: consumes exactly two draws per call.
    double normal() {
        const double u1 = uniform_open();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<std::int64_t>(next() % span);
    }
};

// Substream derivation: mixes the index through one splitmix step so
// campaigns can hand independent generators to instance i of seed s.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed);
    const std::uint64_t base = g.next();
    return SplitMix64(base ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
}

}  // namespace chaoskit

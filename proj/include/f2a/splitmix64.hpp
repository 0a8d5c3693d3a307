#pragma once

#include <cstdint>

namespace f2a {

/// SplitMix64 generator (Steele, Lea & Flood reference constants).
/// Fixed by contract so every build produces identical sampled values.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// The n-th output (0-based) of the stream for a given seed.
    static std::uint64_t nth(std::uint64_t seed, std::uint64_t n) {
        SplitMix64 rng(seed);
        std::uint64_t v = rng.next();
        for (std::uint64_t i = 0; i < n; ++i) v = rng.next();
        return v;
    }

private:
    std::uint64_t state_;
};

} // namespace f2a

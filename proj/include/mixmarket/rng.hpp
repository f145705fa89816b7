#pragma once

#include <cstdint>

namespace mixmarket {

/// Counter-based random stream: every draw is a pure function of
/// (seed, index, stream), so parallel consumers produce identical values
/// regardless of evaluation order or thread count.
struct CounterRng {
    std::uint64_t seed = 0;

    /// splitmix64 finalizer.
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    constexpr std::uint64_t bits(std::uint64_t index, std::uint64_t stream = 0) const {
        return mix(mix(mix(seed) ^ index) ^ stream);
    }

    /// Uniform draw in [0, 1) with 53 random bits.
    constexpr double uniform(std::uint64_t index, std::uint64_t stream = 0) const {
        return static_cast<double>(bits(index, stream) >> 11) * 0x1.0p-53;
    }
};

} // namespace mixmarket

#pragma once

#include <cstdint>

namespace qkd3 {

/// Counter-keyed random stream: one independent generator per (seed, stream)
/// pair, so simulation rounds can be evaluated in any order or on any number
/// of threads and still draw identical values. The state update is the
/// splitmix64 sequence; the key mixing runs the output permutation twice to
/// decorrelate neighbouring stream indices.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(mix(seed + 0x9E3779B97F4A7C15ULL) ^ mix(stream))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Multiply-shift; the O(n/2^64) bias is far
    /// below anything the statistical tests here can resolve.
    std::uint32_t next_below(std::uint32_t n) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace qkd3

#pragma once

#include <cstdint>

namespace aco {

/// Counter-based stream keyed by (seed, iteration, stream id). Two streams with
/// the same key produce the same sequence on every platform, independent of the
/// order in which streams are consumed.
class Stream {
public:
    /// Stream id reserved for ant placement.
    static constexpr std::uint64_t kPlacement = ~std::uint64_t{0};

    Stream(std::uint64_t seed, std::uint64_t iteration, std::uint64_t id)
        : state_(mix(mix(mix(seed) ^ iteration) ^ id)) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on [0, bound) by multiply-high reduction.
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

private:
    // SplitMix64 finalizer.
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace aco

#pragma once

#include <cstdint>
#include <random>

namespace delcode {

using RandomStream = std::mt19937_64;

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Seed of the index-th child stream of `seed`. Child streams are what make
/// per-run and per-trace randomness independent of scheduling.
std::uint64_t substream(std::uint64_t seed, std::uint64_t index) noexcept;

inline RandomStream make_stream(std::uint64_t seed) { return RandomStream(seed); }

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(RandomStream& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}  // namespace delcode

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ficogarch {

/// splitmix64 mixing step. Used as the stream-splitting hash; the constants
/// are part of the on-disk reproducibility contract and must not change.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives the seed of named sub-stream `stream` from a base seed.
///
/// Stream layout, fixed across versions:
///   0 -> positive-time half of a two-sided path
///   1 -> negative-time half of a two-sided path
///   2 + i -> ensemble member i (which then derives its own halves)
inline std::uint64_t substream(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(splitmix64(base) ^ (0xD6E8FEB86659FD93ULL * (stream + 1)));
}

namespace streams {
inline constexpr std::uint64_t positive_half = 0;
inline constexpr std::uint64_t negative_half = 1;
inline constexpr std::uint64_t ensemble_base = 2;
}  // namespace streams

/// Seed for ensemble member `index` under a base seed.
inline std::uint64_t ensemble_seed(std::uint64_t base, std::size_t index) {
    return substream(base, streams::ensemble_base + index);
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
    return std::mt19937_64{seed};
}

// The samplers below are written out (rather than taken from <random>'s
// distributions, whose algorithms are implementation-defined) so that a seed
// pins the generated paths bit-for-bit across standard libraries. They are
// part of the reproducibility contract.

/// Uniform draw in (0, 1], 53-bit resolution.
inline double uniform_open(std::mt19937_64& eng) {
    return static_cast<double>((eng() >> 11) + 1) * 0x1.0p-53;
}

/// Standard normal draw (Box-Muller, two engine words per call).
inline double normal_sample(std::mt19937_64& eng) {
    const double u1 = uniform_open(eng);
    const double u2 = uniform_open(eng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

/// Exponential draw with the given rate.
inline double exponential_sample(std::mt19937_64& eng, double rate) {
    return -std::log(uniform_open(eng)) / rate;
}

}  // namespace ficogarch

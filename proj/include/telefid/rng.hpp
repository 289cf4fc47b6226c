// Seeded random streams.
#pragma once

#include <cstdint>
#include <random>

namespace telefid {

using Rng = std::mt19937_64;

/// Independent stream `stream` derived from a user seed. Both the engine and
/// std::seed_seq are fully specified, so streams are reproducible everywhere.
[[nodiscard]] inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x7e1e5u};
    return Rng(seq);
}

/// Uniform double in [0, 1) with 53 random bits.
[[nodiscard]] inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace telefid

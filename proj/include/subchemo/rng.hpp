#pragma once

#include <cstdint>
#include <random>

namespace subchemo {

/// SplitMix64 finalizer; a well-distributed 64-bit mix.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Deterministic per-run seed from a master seed and run index.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
    return splitmix64(splitmix64(master) ^ splitmix64(index + 1));
}

/// Uniform draw strictly inside (0,1) from one generator output.
/// The mapping ((x >> 11) + 0.5) * 2^-53 never produces 0 or 1 and is
/// bit-identical across platforms for a given mt19937_64 stream.
inline double uniform_open(std::mt19937_64& gen)
{
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace subchemo

// SPDX-License-Identifier: Apache-2.0

#ifndef SSLMS_RNG_HPP
#define SSLMS_RNG_HPP

#include <cstdint>
#include <random>

namespace sslms {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to derive independent, order-free stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed of child stream `index` of `parent`. Depends only on the two values.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept
{
    return mix64(mix64(parent) ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

} // namespace sslms

#endif

#pragma once

#include <cstdint>
#include <random>

namespace qmoa {

using Rng = std::mt19937_64;

// splitmix64 finaliser
std::uint64_t mix64(std::uint64_t x);

// Seed of one (depth, repeat) task: mix64 chained over base_seed, depth, repeat.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t depth, std::uint64_t repeat);

// Uniform on [lo, hi) from the top 53 bits; independent of the standard
// library's distribution implementations.
double uniform(Rng& rng, double lo, double hi);

}  // namespace qmoa

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace permsaddle {

// All randomness in the project flows through mt19937_64 (the algorithm is
// pinned by the C++ standard, so streams are platform-stable) seeded through
// splitmix64. Bounded draws use rejection sampling, not modulo, so shuffles
// are unbiased and reproducible everywhere.

std::uint64_t splitmix64(std::uint64_t& state);

// Fixed rule mapping (seed, stream) to an independent sub-seed. Used to give
// MC chunks and simulation datasets their own deterministic streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

std::mt19937_64 make_engine(std::uint64_t seed);

// Uniform on {0, 1, ..., bound-1}, unbiased via rejection. bound >= 1.
std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t bound);

// Uniform double in the open interval (0, 1), 53-bit resolution.
double uniform01(std::mt19937_64& eng);

// In-place Fisher-Yates shuffle.
void shuffle_in_place(std::vector<int>& values, std::mt19937_64& eng);

// A uniformly random permutation of 1..n.
std::vector<int> random_permutation(int n, std::mt19937_64& eng);

}  // namespace permsaddle

#include "permsaddle/rng.hpp"

#include <numeric>

namespace permsaddle {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  std::uint64_t mixed = splitmix64(state);
  state = mixed ^ (stream * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL);
  return splitmix64(state);
}

std::mt19937_64 make_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t bound) {
  // Rejection below the largest multiple of bound; expected < 2 draws.
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
  std::uint64_t draw;
  do {
    draw = eng();
  } while (draw >= limit);
  return draw % bound;
}

double uniform01(std::mt19937_64& eng) {
  double u;
  do {
    u = double(eng() >> 11) * 0x1.0p-53;
  } while (u <= 0.0);
  return u;
}

void shuffle_in_place(std::vector<int>& values, std::mt19937_64& eng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = std::size_t(uniform_below(eng, i));
    std::swap(values[i - 1], values[j]);
  }
}

std::vector<int> random_permutation(int n, std::mt19937_64& eng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  shuffle_in_place(perm, eng);
  return perm;
}

}  // namespace permsaddle

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "permsaddle/rankstat.hpp"

namespace permsaddle {

// Ground-truth and baseline p-values for the upper tail at v0.
//
// Permutations tying with v0 can be counted half (the mid-p convention,
// p = Pr(V > v0) + Pr(V = v0)/2) or fully (the conservative inclusive tail
// Pr(V >= v0)). The default is half: that is the quantity the uncorrected
// saddlepoint formula approximates on lattice statistics, and what the
// reference Monte Carlo numbers for the transmission data correspond to.
enum class TieRule { half, full };

// Full enumeration over N! permutations; refuses N above this cap.
inline constexpr int kExactEnumerationCap = 10;

double exact_pvalue(const StatisticSpec& spec, double v0, TieRule ties = TieRule::half);

struct McResult {
  double p = 0.0;
  double std_error = 0.0;  // sqrt(p (1-p) / replicates)
};

// Monte Carlo over uniformly random permutations. Replicates are processed
// in fixed-size chunks whose streams derive from (seed, chunk index), so the
// result is bit-identical for a given seed regardless of how chunks are
// scheduled. Generator: mt19937_64 + rejection-sampled Fisher-Yates.
McResult mc_pvalue(const StatisticSpec& spec, double v0, std::uint64_t replicates,
                   std::uint64_t seed, TieRule ties = TieRule::half);

// 1 - Phi((v0 - mean) / sd) using the permutation moments of the statistic.
// continuity_offset is subtracted from v0 first (0 reproduces the plain
// standardized statistic; h/2 applies a lattice continuity correction).
double normal_pvalue(const StatisticSpec& spec, double v0, double continuity_offset = 0.0);

// Results of every requested method for one test run.
struct PValueReport {
  std::optional<double> saddlepoint;
  std::optional<double> exact;
  std::optional<double> monte_carlo;
  std::optional<double> mc_std_error;
  std::optional<std::uint64_t> mc_replicates;
  std::optional<double> normal;
  double v0 = 0.0;
  int n = 0;
  std::map<std::string, double> method_diagnostics;
  std::map<std::string, std::string> method_errors;
};

}  // namespace permsaddle

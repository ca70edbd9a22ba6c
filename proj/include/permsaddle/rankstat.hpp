#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "permsaddle/scores.hpp"

namespace permsaddle {

// N paired observations (x_i, y_i). Ties within either coordinate are
// rejected: the permutation null needs all N! rank orderings equally likely.
struct PairedSample {
  std::vector<double> x;
  std::vector<double> y;

  int n() const { return int(x.size()); }
};

// Throws on length mismatch, N < 2, non-finite values, or ties.
void validate_paired_sample(const PairedSample& sample);

// The rank permutation: ranks[i-1] is the rank of y among all y values for
// the pair holding the i-th smallest x.
struct RankConfiguration {
  std::vector<int> ranks;  // a permutation of 1..n
  int n = 0;
};

// Wraps a raw permutation after checking it really is one.
RankConfiguration make_rank_configuration(std::vector<int> ranks);

RankConfiguration rank_pairs(const PairedSample& sample);

// Score pair (a, b) plus everything derived from it that the statistic,
// its permutation moments, and the saddlepoint machinery need.
//
// The statistic is V = sum_i a_i * b_{R_i}. With a = b = f this is the
// classical single-score family; distinct a and b cover regression-type
// statistics such as sum_i xi_i * R_i.
struct StatisticSpec {
  ScoreVector a;  // regression scores, indexed by position i
  ScoreVector b;  // rank scores, indexed by rank R_i
  Eigen::MatrixXd r;  // N x (N-1), r(i,j) = a_i * (b_j - b_N)
  double q_offset = 0.0;  // b_N * sum_i a_i
  double mean = 0.0;      // N * mean(a) * mean(b)
  double variance = 0.0;  // sum_i (a_i - abar)^2 * sum_j (b_j - bbar)^2 / (N-1)

  int n() const { return a.n(); }
};

StatisticSpec build_spec(const ScoreVector& a, const ScoreVector& b);

// V = sum_i a_i * b_{R_i}.
double statistic_value(const StatisticSpec& spec, const RankConfiguration& ranks);

// Same statistic through the indicator-vector route:
// sum_{j<N} (b_j - b_N) * (sum of a_i over i with R_i = j) + Q.
// Agrees with statistic_value bitwise for integer scores; used as a
// cross-check of the decomposition the saddlepoint construction relies on.
double statistic_value_indicator_form(const StatisticSpec& spec, const RankConfiguration& ranks);

// D = sum_i (R_i - i)^2; small values indicate positive association.
double d_statistic(const RankConfiguration& ranks);

// Spearman's rho = 1 - 6 D / (N (N^2 - 1)).
double spearman_rho(const RankConfiguration& ranks);

// Weighted Mann statistic D' = N (N^2 - 1) / 6 - D / 2.
double weighted_mann(const RankConfiguration& ranks);

// {min, max} of V over all permutations (rearrangement inequality bounds,
// both attained).
std::pair<double, double> support_range(const StatisticSpec& spec);

}  // namespace permsaddle

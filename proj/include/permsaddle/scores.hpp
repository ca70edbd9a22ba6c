#pragma once

#include <string>
#include <vector>

namespace permsaddle {

enum class ScoreKind { spearman, fisher_yates, van_der_waerden, quadrant, custom };

std::string to_string(ScoreKind kind);
ScoreKind score_kind_from_string(const std::string& name);

// A length-N vector of scores f(1..N) defining one member of the linear
// rank statistic family. Ranks are 1-based at every interface; values[i-1]
// holds f(i).
struct ScoreVector {
  std::vector<double> values;
  ScoreKind kind = ScoreKind::custom;

  int n() const { return int(values.size()); }
  double at_rank(int rank) const { return values[std::size_t(rank - 1)]; }
};

// Identity scores (1, 2, ..., N); the statistic becomes sum(i * R_i).
ScoreVector spearman_scores(int n);

// Normal quantiles f(i) = Phi^{-1}(i / (N+1)).
ScoreVector van_der_waerden_scores(int n);

// Expected standard normal order statistics f(i) = E U_(i), computed by
// adaptive Gauss-Legendre quadrature of the order-statistic density on
// |u| <= 10 with the integrand assembled in log space.
ScoreVector fisher_yates_scores(int n);

// Sign scores f(i) = sign(i - (N+1)/2).
ScoreVector quadrant_scores(int n);

// Arbitrary user scores, validated for size and finiteness.
ScoreVector custom_scores(const std::vector<double>& values);

ScoreVector scores_by_kind(ScoreKind kind, int n);

}  // namespace permsaddle

#include "permsaddle/cgf.hpp"

#include <cmath>

#include "permsaddle/errors.hpp"

namespace permsaddle {

CgfPoint cgf_eval(const StatisticSpec& spec, const Eigen::VectorXd& s, double t) {
  const int n = spec.n();
  if (s.size() != n - 1) {
    throw invalid_input("cgf_eval: s must have length N-1 = " + std::to_string(n - 1) +
                        ", got " + std::to_string(s.size()));
  }
  if (!s.allFinite() || !std::isfinite(t)) throw invalid_input("cgf_eval: non-finite input");

  CgfPoint point;
  point.s = s;
  point.t = t;
  point.gradient = Eigen::VectorXd::Zero(n);
  point.hessian = Eigen::MatrixXd::Zero(n, n);

  const double log_n = std::log(double(n));
  Eigen::VectorXd p(n - 1);       // softmax weights of categories 1..N-1
  Eigen::VectorXd rp(n - 1);      // r_ij * p_j
  double value = 0.0;

  for (int i = 0; i < n; ++i) {
    // Stable log-sum-exp over the N logits (s_j + r_ij t for j<N, and 0).
    double max_logit = 0.0;
    for (int j = 0; j < n - 1; ++j) {
      const double logit = s[j] + spec.r(i, j) * t;
      p[j] = logit;  // hold raw logits for the moment
      if (logit > max_logit) max_logit = logit;
    }
    double denom = std::exp(-max_logit);  // category N
    for (int j = 0; j < n - 1; ++j) {
      p[j] = std::exp(p[j] - max_logit);
      denom += p[j];
    }
    value += max_logit + std::log(denom) - log_n;

    p /= denom;  // now the per-factor softmax probabilities
    double tilted_mean = 0.0;   // E r_iJ under the softmax
    double tilted_sq = 0.0;     // E r_iJ^2
    for (int j = 0; j < n - 1; ++j) {
      const double rij = spec.r(i, j);
      rp[j] = rij * p[j];
      tilted_mean += rp[j];
      tilted_sq += rij * rp[j];
    }

    point.gradient.head(n - 1) += p;
    point.gradient[n - 1] += tilted_mean;

    // Covariance of (indicator of categories 1..N-1, r_iJ):
    //   ss block: diag(p) - p p^T
    //   st block: r_ij p_j - p_j * mean
    //   tt entry: E r^2 - mean^2
    auto ss = point.hessian.topLeftCorner(n - 1, n - 1);
    ss.diagonal() += p;
    ss.noalias() -= p * p.transpose();
    point.hessian.col(n - 1).head(n - 1) += rp - tilted_mean * p;
    point.hessian(n - 1, n - 1) += tilted_sq - tilted_mean * tilted_mean;
  }

  point.value = value;
  point.hessian.row(n - 1).head(n - 1) = point.hessian.col(n - 1).head(n - 1);
  return point;
}

double denominator_hessian_det(int n) {
  if (n < 2) throw invalid_input("denominator_hessian_det: need N >= 2");
  return 1.0 / n;
}

double denominator_hessian_logdet(int n) {
  if (n < 2) throw invalid_input("denominator_hessian_logdet: need N >= 2");
  return -std::log(double(n));
}

}  // namespace permsaddle

#pragma once

#include <Eigen/Core>

#include "permsaddle/rankstat.hpp"

namespace permsaddle {

// Joint cumulant generating function of (T, sum of zeta^-) for the
// multinomial construction of the permutation distribution:
//
//   K(s, t) = sum_i log( (1/N) [ sum_{j<N} exp(s_j + r_ij t) + 1 ] )
//
// where T = sum_i sum_{j<N} r_ij zeta_ij is the statistic shifted by its
// constant offset Q, and the category probabilities are fixed at 1/N (the
// choice that makes the denominator saddlepoint exactly 0). Each factor i
// is a softmax over N categories with category N pinned at logit 0, so the
// gradient and Hessian accumulate per-factor softmax means and covariances.
struct CgfPoint {
  Eigen::VectorXd s;         // length N-1
  double t = 0.0;
  double value = 0.0;        // K(s, t)
  Eigen::VectorXd gradient;  // length N: (dK/ds_1 .. dK/ds_{N-1}, dK/dt)
  Eigen::MatrixXd hessian;   // N x N, symmetric positive semidefinite
};

CgfPoint cgf_eval(const StatisticSpec& spec, const Eigen::VectorXd& s, double t);

// det of the (N-1)x(N-1) s-block of the Hessian at (0, 0). With uniform
// category probabilities the block is I - (1/N) 1 1^T, whose determinant is
// 1/N by the matrix determinant lemma.
double denominator_hessian_det(int n);
double denominator_hessian_logdet(int n);

}  // namespace permsaddle

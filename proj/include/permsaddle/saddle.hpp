#pragma once

#include <string>

#include "permsaddle/cgf.hpp"
#include "permsaddle/rankstat.hpp"

namespace permsaddle {

enum class SolveStatus { converged, at_mean, max_support, min_support, failed };

std::string to_string(SolveStatus status);

struct SaddlepointSolution {
  Eigen::VectorXd s_hat;     // length N-1
  double t_hat = 0.0;
  CgfPoint cgf_at_solution;
  double w_hat = 0.0;
  double u_hat = 0.0;
  int iterations = 0;
  double residual_norm = 0.0;
  SolveStatus status = SolveStatus::failed;
  double v0 = 0.0;
};

// Solves K'_s(s, t) = 1 (componentwise) and K'_t(s, t) = v0 - Q by damped
// Newton from (0, 0) with the analytic Hessian as Jacobian. If plain Newton
// stalls the target is approached by a homotopy marching v0 from the mean.
// v0 at or beyond the permutation support boundary short-circuits to
// min_support / max_support, and v0 within 1e-9 standard deviations of the
// mean to at_mean (where (0, 0) is the solution).
SaddlepointSolution solve_saddlepoint(const StatisticSpec& spec, double v0);

// Skovgaard tail approximation Pr(V >= v0) = 1 - Phi(w) - phi(w)(1/w - 1/u),
// clamped to [0, 1] (clamped reports whether clamping fired). The removable
// singularity at the mean is handled by evaluating at v0 +/- 1e-4 sd and
// averaging. Throws solver_error unless status is converged or at_mean.
double tail_probability(const StatisticSpec& spec, const SaddlepointSolution& solution,
                        bool* clamped = nullptr);

struct SaddleOptions {
  // Evaluate at v0 - lattice_offset (h/2 for a lattice statistic with gap h).
  // Off by default: the plain formula at the observed value already tracks
  // the tie-inclusive tail of these permutation distributions.
  double lattice_offset = 0.0;
};

// Convenience wrapper: solve, then map boundary states to the conventional
// p-values (v0 at/below the support minimum -> 1, at/above the maximum -> 0)
// and interior states through tail_probability.
double saddlepoint_pvalue(const StatisticSpec& spec, double v0, const SaddleOptions& options = {},
                          SaddlepointSolution* solution_out = nullptr);

}  // namespace permsaddle

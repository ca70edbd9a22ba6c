#include "permsaddle/saddle.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "permsaddle/errors.hpp"
#include "permsaddle/normal.hpp"

namespace permsaddle {

namespace {

constexpr int kMaxIterations = 200;
constexpr int kMaxHalvings = 30;
// |w| below this is too close to the removable singularity for the direct
// formula; switch to the +/- epsilon average.
constexpr double kSingularW = 1e-5;
constexpr double kEpsilonSd = 1e-4;

Eigen::VectorXd system_residual(const CgfPoint& point, double target_t) {
  const Eigen::Index n = point.gradient.size();
  Eigen::VectorXd g = point.gradient;
  g.head(n - 1).array() -= 1.0;
  g[n - 1] -= target_t;
  return g;
}

struct NewtonOutcome {
  Eigen::VectorXd z;  // (s, t)
  CgfPoint point;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Damped Newton on G(s, t) = (K'_s - 1, K'_t - x) with the Hessian as
// Jacobian. Steps are halved until the residual norm decreases.
NewtonOutcome newton_solve(const StatisticSpec& spec, double x, Eigen::VectorXd z0,
                           int max_iterations) {
  const int n = spec.n();
  const double tolerance = 1e-10 * std::max(1.0, std::abs(x));

  NewtonOutcome out;
  out.z = std::move(z0);
  out.point = cgf_eval(spec, out.z.head(n - 1), out.z[n - 1]);
  Eigen::VectorXd residual = system_residual(out.point, x);
  double residual_norm = residual.norm();

  for (int iter = 0; iter < max_iterations; ++iter) {
    if (residual_norm <= tolerance) {
      out.converged = true;
      break;
    }
    ++out.iterations;

    Eigen::LDLT<Eigen::MatrixXd> ldlt(out.point.hessian);
    if (ldlt.info() != Eigen::Success || (ldlt.vectorD().array() <= 0.0).any()) {
      // Tilted covariance lost definiteness to rounding; nudge the diagonal.
      Eigen::MatrixXd jittered = out.point.hessian;
      jittered.diagonal().array() += 1e-12 * std::max(1.0, out.point.hessian.trace());
      ldlt.compute(jittered);
      if (ldlt.info() != Eigen::Success) break;
    }
    const Eigen::VectorXd step = ldlt.solve(-residual);
    if (!step.allFinite()) break;

    double alpha = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= kMaxHalvings; ++halving) {
      const Eigen::VectorXd trial = out.z + alpha * step;
      CgfPoint trial_point = cgf_eval(spec, trial.head(n - 1), trial[n - 1]);
      Eigen::VectorXd trial_residual = system_residual(trial_point, x);
      const double trial_norm = trial_residual.norm();
      if (std::isfinite(trial_norm) && trial_norm < residual_norm) {
        out.z = trial;
        out.point = std::move(trial_point);
        residual = std::move(trial_residual);
        residual_norm = trial_norm;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // stalled
  }

  out.residual = residual_norm;
  out.converged = out.converged || residual_norm <= tolerance;
  return out;
}

// Log-determinant of the full Hessian, or NaN when it is not positive
// definite (degenerate tilt at extreme v0).
double hessian_logdet(const Eigen::MatrixXd& hessian) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(hessian);
  if (ldlt.info() != Eigen::Success) return std::numeric_limits<double>::quiet_NaN();
  const auto d = ldlt.vectorD();
  if ((d.array() <= 0.0).any()) return std::numeric_limits<double>::quiet_NaN();
  return d.array().log().sum();
}

double lugannani_rice(double w, double u) {
  return 1.0 - norm_cdf(w) - norm_pdf(w) * (1.0 / w - 1.0 / u);
}

double epsilon_average(const StatisticSpec& spec, double v0, bool* clamped);

double tail_from_solution(const StatisticSpec& spec, const SaddlepointSolution& solution,
                          bool* clamped) {
  if (solution.status == SolveStatus::at_mean) {
    return epsilon_average(spec, solution.v0, clamped);
  }
  if (solution.status != SolveStatus::converged) {
    throw solver_error("tail_probability: saddlepoint solve status is " +
                       to_string(solution.status));
  }
  if (std::abs(solution.w_hat) < kSingularW || std::abs(solution.u_hat) < kSingularW) {
    return epsilon_average(spec, solution.v0, clamped);
  }
  const double raw = lugannani_rice(solution.w_hat, solution.u_hat);
  const double p = std::min(1.0, std::max(0.0, raw));
  if (clamped != nullptr) *clamped = (p != raw);
  return p;
}

double epsilon_average(const StatisticSpec& spec, double v0, bool* clamped) {
  const double sd = std::sqrt(spec.variance);
  double total = 0.0;
  int sides = 0;
  for (const double dv : {-kEpsilonSd * sd, kEpsilonSd * sd}) {
    SaddlepointSolution side = solve_saddlepoint(spec, v0 + dv);
    if (side.status != SolveStatus::converged) continue;
    const double raw = lugannani_rice(side.w_hat, side.u_hat);
    if (!std::isfinite(raw)) continue;
    total += raw;
    ++sides;
  }
  if (sides == 0) return 0.5;  // mean sits at the distribution's center of symmetry scale
  const double raw = total / sides;
  const double p = std::min(1.0, std::max(0.0, raw));
  if (clamped != nullptr) *clamped = (p != raw);
  return p;
}

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::at_mean: return "at_mean";
    case SolveStatus::max_support: return "max_support";
    case SolveStatus::min_support: return "min_support";
    case SolveStatus::failed: return "failed";
  }
  return "failed";
}

SaddlepointSolution solve_saddlepoint(const StatisticSpec& spec, double v0) {
  const int n = spec.n();
  if (spec.variance <= 0.0) {
    throw degenerate_spec_error("solve_saddlepoint: spec has zero variance");
  }

  SaddlepointSolution solution;
  solution.v0 = v0;
  solution.s_hat = Eigen::VectorXd::Zero(n - 1);

  const double sd = std::sqrt(spec.variance);
  if (std::abs(v0 - spec.mean) <= 1e-9 * sd) {
    solution.status = SolveStatus::at_mean;
    solution.t_hat = 0.0;
    solution.cgf_at_solution = cgf_eval(spec, solution.s_hat, 0.0);
    return solution;
  }
  const auto [support_min, support_max] = support_range(spec);
  if (v0 >= support_max) {
    solution.status = SolveStatus::max_support;
    return solution;
  }
  if (v0 <= support_min) {
    solution.status = SolveStatus::min_support;
    return solution;
  }

  const double x = v0 - spec.q_offset;
  NewtonOutcome outcome = newton_solve(spec, x, Eigen::VectorXd::Zero(n), kMaxIterations);
  solution.iterations = outcome.iterations;

  if (!outcome.converged) {
    // Homotopy fallback: march the target from the mean (where (0,0) is
    // exact) toward x, warm-starting each stage.
    const double x_mean = spec.mean - spec.q_offset;
    for (const int stages : {4, 16, 64}) {
      Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
      bool path_ok = true;
      int path_iterations = 0;
      NewtonOutcome stage_outcome;
      for (int k = 1; k <= stages; ++k) {
        const double x_k = x_mean + (x - x_mean) * double(k) / stages;
        stage_outcome = newton_solve(spec, x_k, z, 100);
        path_iterations += stage_outcome.iterations;
        if (!stage_outcome.converged) {
          path_ok = false;
          break;
        }
        z = stage_outcome.z;
      }
      solution.iterations += path_iterations;
      if (path_ok) {
        outcome = std::move(stage_outcome);
        break;
      }
    }
  }

  if (!outcome.converged) {
    solution.status = SolveStatus::failed;
    solution.residual_norm = outcome.residual;
    return solution;
  }

  solution.s_hat = outcome.z.head(n - 1);
  solution.t_hat = outcome.z[n - 1];
  solution.cgf_at_solution = std::move(outcome.point);
  solution.residual_norm = outcome.residual;

  // Exponent on the shifted statistic: w^2/2 = -(K - s.1 - (v0-Q) t).
  const double exponent = solution.s_hat.sum() + x * solution.t_hat - solution.cgf_at_solution.value;
  solution.w_hat = (solution.t_hat >= 0.0 ? 1.0 : -1.0) * std::sqrt(2.0 * std::max(0.0, exponent));

  const double logdet = hessian_logdet(solution.cgf_at_solution.hessian);
  if (!std::isfinite(logdet)) {
    solution.status = SolveStatus::failed;
    return solution;
  }
  // |K''_ss(0,0)| = 1/N, so the determinant ratio is |K''| * N.
  solution.u_hat = solution.t_hat * std::exp(0.5 * (logdet - denominator_hessian_logdet(n)));
  solution.status = SolveStatus::converged;
  return solution;
}

double tail_probability(const StatisticSpec& spec, const SaddlepointSolution& solution,
                        bool* clamped) {
  if (clamped != nullptr) *clamped = false;
  return tail_from_solution(spec, solution, clamped);
}

double saddlepoint_pvalue(const StatisticSpec& spec, double v0, const SaddleOptions& options,
                          SaddlepointSolution* solution_out) {
  SaddlepointSolution solution = solve_saddlepoint(spec, v0 - options.lattice_offset);
  double p = 0.0;
  switch (solution.status) {
    case SolveStatus::min_support: p = 1.0; break;
    case SolveStatus::max_support: p = 0.0; break;
    case SolveStatus::failed:
      if (solution_out != nullptr) *solution_out = std::move(solution);
      throw solver_error("saddlepoint solve failed at v0 = " + std::to_string(v0));
    default: p = tail_probability(spec, solution); break;
  }
  if (solution_out != nullptr) *solution_out = std::move(solution);
  return p;
}

}  // namespace permsaddle

// Acceptance suite: end-to-end checks of the p-value engine at its stated
// tolerances, one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "permsaddle/cgf.hpp"
#include "permsaddle/oracles.hpp"
#include "permsaddle/rankstat.hpp"
#include "permsaddle/rng.hpp"
#include "permsaddle/saddle.hpp"
#include "permsaddle/scores.hpp"
#include "permsaddle/simstudy.hpp"

using namespace permsaddle;

namespace {

int g_failures = 0;

void criterion(int index, const char* label, bool ok, const std::string& detail) {
  std::printf("%s  [%d] %s: %s\n", ok ? "PASS" : "FAIL", index, label, detail.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Transmission and pump failure times on 15 tractors (Nayak, 1988).
PairedSample transmission_data() {
  return PairedSample{
      {1641, 5556, 5421, 3168, 1534, 6367, 9460, 6679, 6142, 5995, 3953, 6922, 4210, 5161, 4732},
      {850, 1607, 2225, 3223, 3379, 3832, 3871, 4142, 4300, 4789, 6310, 6311, 6378, 6449, 6949}};
}

std::map<double, int> support_counts(const StatisticSpec& spec) {
  const int n = spec.n();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::map<double, int> counts;
  do {
    ++counts[statistic_value(spec, make_rank_configuration(perm))];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return counts;
}

void criterion_1_worked_example() {
  const PairedSample sample = transmission_data();
  const RankConfiguration ranks = rank_pairs(sample);
  const StatisticSpec spec = build_spec(spearman_scores(15), spearman_scores(15));
  const double v0 = statistic_value(spec, ranks);

  const auto sad_start = std::chrono::steady_clock::now();
  const double sad = saddlepoint_pvalue(spec, v0);
  const double sad_seconds = seconds_since(sad_start);

  const double normal = normal_pvalue(spec, v0);

  const auto mc_start = std::chrono::steady_clock::now();
  const McResult mc = mc_pvalue(spec, v0, 1000000, 20240601);
  const double mc_seconds = seconds_since(mc_start);

  char detail[256];
  const bool ok = sad >= 0.2753 && sad <= 0.2773 && normal >= 0.2683 && normal <= 0.2703 &&
                  std::abs(mc.p - 0.2768) <= 0.0015 && sad_seconds < 1.0 && mc_seconds < 30.0;
  std::snprintf(detail, sizeof(detail),
                "v0=%.0f sad=%.4f in [0.2753,0.2773], normal=%.4f in [0.2683,0.2703], "
                "mc=%.4f in 0.2768+-0.0015 (se=%.5f); solve %.3fs, mc %.1fs",
                v0, sad, normal, mc.p, mc.std_error, sad_seconds, mc_seconds);
  criterion(1, "worked example, N=15 spearman", ok, detail);
}

void criterion_2_small_n_sweep() {
  // Per-point bound over the open support; the mean also includes the two
  // boundary values, where the solver's 0/1 mapping applies.
  const StatisticSpec spec = build_spec(spearman_scores(6), spearman_scores(6));
  const std::map<double, int> counts = support_counts(spec);
  const auto [lo, hi] = support_range(spec);
  const auto start = std::chrono::steady_clock::now();
  double worst_interior = 0.0, total = 0.0;
  int interior = 0;
  for (const auto& [v0, count] : counts) {
    const double err = std::abs(saddlepoint_pvalue(spec, v0) - exact_pvalue(spec, v0));
    total += err;
    if (v0 > lo && v0 < hi) {
      worst_interior = std::max(worst_interior, err);
      ++interior;
    }
  }
  const double mean_err = total / double(counts.size());
  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "%d interior + 2 boundary points: max |sad-exact| = %.5f <= 0.01, mean = %.5f "
                "<= 0.004 (%.2fs)",
                interior, worst_interior, mean_err, seconds_since(start));
  criterion(2, "N=6 saddlepoint vs full enumeration", worst_interior <= 0.01 && mean_err <= 0.004,
            detail);
}

void criterion_3_simulation_study() {
  StudyConfig config;
  config.sample_sizes = {10};
  config.lambdas = {0.0, 0.5};
  config.datasets_per_cell = 200;
  config.truth_replicates = 100000;
  config.seed = 20240601;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<StudyCell> cells = run_study(config);
  const double elapsed = seconds_since(start);
  bool ok = cells.size() == 2 && elapsed <= 600.0;
  std::string detail;
  for (const StudyCell& cell : cells) {
    ok = ok && cell.sad_prop >= 0.85 && cell.abs_err_sad <= 0.003 &&
         cell.abs_err_sad < cell.abs_err_norm;
    char part[160];
    std::snprintf(part, sizeof(part),
                  "[lambda=%.1f: sad_prop=%.3f>=0.85, abs_err=%.5f<=0.003, norm_err=%.5f] ",
                  cell.lambda, cell.sad_prop, cell.abs_err_sad, cell.abs_err_norm);
    detail += part;
  }
  char timing[64];
  std::snprintf(timing, sizeof(timing), "(%.0fs <= 600s)", elapsed);
  criterion(3, "desk-scale accuracy study, n=10", ok, detail + timing);
}

void criterion_4_cgf_correctness() {
  bool ok = true;
  std::string failure;

  // origin identities
  for (int n = 2; n <= 20; ++n) {
    const StatisticSpec spec = build_spec(spearman_scores(n), spearman_scores(n));
    const CgfPoint origin = cgf_eval(spec, Eigen::VectorXd::Zero(n - 1), 0.0);
    if (std::abs(origin.value) > 1e-12) {
      ok = false;
      failure = "K(0,0) != 0 at N=" + std::to_string(n);
    }
    for (int j = 0; j < n - 1; ++j) {
      if (std::abs(origin.gradient[j] - 1.0) > 1e-12) {
        ok = false;
        failure = "dK/ds != 1 at N=" + std::to_string(n);
      }
    }
    const double block_det = origin.hessian.topLeftCorner(n - 1, n - 1).determinant();
    if (std::abs(block_det - 1.0 / n) > 1e-12) {
      ok = false;
      failure = "|K_ss''(0,0)| != 1/N at N=" + std::to_string(n);
    }
  }

  // finite differences
  std::mt19937_64 eng = make_engine(8675309);
  double worst_grad = 0.0, worst_hess = 0.0;
  for (const int n : {4, 8, 15}) {
    const StatisticSpec spec = build_spec(spearman_scores(n), spearman_scores(n));
    const double r_scale = spec.r.cwiseAbs().maxCoeff();
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd s(n - 1);
      for (int k = 0; k < n - 1; ++k) s[k] = uniform01(eng) - 0.5;
      const double t = (uniform01(eng) - 0.5) * 2.0 / r_scale;
      const CgfPoint point = cgf_eval(spec, s, t);

      Eigen::VectorXd grad_fd(n);
      Eigen::MatrixXd hess_fd(n, n);
      const double step = 1e-5;
      for (int k = 0; k < n; ++k) {
        Eigen::VectorXd s_hi = s, s_lo = s;
        double t_hi = t, t_lo = t;
        if (k < n - 1) {
          s_hi[k] += step;
          s_lo[k] -= step;
        } else {
          t_hi += step;
          t_lo -= step;
        }
        const CgfPoint hi = cgf_eval(spec, s_hi, t_hi);
        const CgfPoint lo = cgf_eval(spec, s_lo, t_lo);
        grad_fd[k] = (hi.value - lo.value) / (2.0 * step);
        hess_fd.col(k) = (hi.gradient - lo.gradient) / (2.0 * step);
      }
      worst_grad = std::max(worst_grad, (point.gradient - grad_fd).norm() /
                                            std::max(1.0, point.gradient.norm()));
      worst_hess = std::max(worst_hess, (point.hessian - hess_fd).norm() /
                                            std::max(1.0, point.hessian.norm()));
    }
  }
  if (worst_grad > 1e-5 || worst_hess > 1e-5) ok = false;

  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "origin identities to 1e-12 for N=2..20%s%s; FD rel err: grad %.2e, hess %.2e "
                "(tol 1e-5)",
                failure.empty() ? "" : " EXCEPT ", failure.c_str(), worst_grad, worst_hess);
  criterion(4, "CGF gradient/Hessian correctness", ok, detail);
}

void criterion_5_statistic_identities() {
  std::mt19937_64 eng = make_engine(5551212);
  bool ok = true;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + int(uniform_below(eng, 11));  // N <= 12
    const RankConfiguration ranks = make_rank_configuration(random_permutation(n, eng));
    const StatisticSpec spec = build_spec(spearman_scores(n), spearman_scores(n));
    const double v_prime = statistic_value(spec, ranks);
    const double d = d_statistic(ranks);
    const double nn = n;
    worst = std::max(worst, std::abs(d - (nn * (nn + 1.0) * (2.0 * nn + 1.0) / 3.0 - 2.0 * v_prime)));
    worst = std::max(worst, std::abs(spearman_rho(ranks) - (1.0 - 6.0 * d / (nn * (nn * nn - 1.0)))));
    worst = std::max(worst, std::abs(weighted_mann(ranks) - (nn * (nn * nn - 1.0) / 6.0 - d / 2.0)));
    if (statistic_value(spec, ranks) != statistic_value_indicator_form(spec, ranks)) ok = false;
  }
  ok = ok && worst <= 1e-9;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "100 random permutations, N<=12: identity residual %.2e <= 1e-9; direct == "
                "indicator form exactly",
                worst);
  criterion(5, "statistic identities (D, rho, D', indicator form)", ok, detail);
}

void criterion_6_determinism() {
  const StatisticSpec spec = build_spec(spearman_scores(12), spearman_scores(12));
  const double v0 = spec.mean + std::sqrt(spec.variance);  // interior point, p ~ 0.16
  const McResult mc_a = mc_pvalue(spec, v0, 300000, 777);
  const McResult mc_b = mc_pvalue(spec, v0, 300000, 777);

  StudyConfig config;
  config.sample_sizes = {10};
  config.lambdas = {0.5};
  config.datasets_per_cell = 25;
  config.truth_replicates = 10000;
  config.seed = 99;
  const std::vector<StudyCell> run_a = run_study(config);
  const std::vector<StudyCell> run_b = run_study(config);
  bool study_equal = run_a.size() == run_b.size();
  for (std::size_t i = 0; study_equal && i < run_a.size(); ++i) {
    study_equal = run_a[i].sad_prop == run_b[i].sad_prop &&
                  run_a[i].abs_err_sad == run_b[i].abs_err_sad &&
                  run_a[i].rel_abs_err_sad == run_b[i].rel_abs_err_sad &&
                  run_a[i].abs_err_norm == run_b[i].abs_err_norm &&
                  run_a[i].failures == run_b[i].failures;
  }
  study_equal = study_equal && study_csv(run_a) == study_csv(run_b);

  const bool ok = mc_a.p == mc_b.p && mc_a.std_error == mc_b.std_error && study_equal;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "mc twice: %.6f == %.6f; study twice: %s (csv byte-identical)", mc_a.p, mc_b.p,
                study_equal ? "equal" : "DIFFER");
  criterion(6, "fixed-seed runs are bit-identical", ok, detail);
}

void criterion_7_monotonicity() {
  const StatisticSpec spec = build_spec(spearman_scores(10), spearman_scores(10));
  const auto [lo, hi] = support_range(spec);
  const double span = hi - lo;
  double previous = 2.0, worst_violation = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double v0 = lo + span * (k + 1.0) / 21.0;
    const double p = saddlepoint_pvalue(spec, v0);
    worst_violation = std::max(worst_violation, p - previous);
    previous = p;
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail),
                "20-point grid, N=10 spearman: worst adjacent increase %.2e <= 1e-9",
                worst_violation);
  criterion(7, "tail probability monotone in v0", worst_violation <= 1e-9, detail);
}

}  // namespace

int main() {
  criterion_1_worked_example();
  criterion_2_small_n_sweep();
  criterion_3_simulation_study();
  criterion_4_cgf_correctness();
  criterion_5_statistic_identities();
  criterion_6_determinism();
  criterion_7_monotonicity();
  if (g_failures == 0) {
    std::printf("all 7 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}

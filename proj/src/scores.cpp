#include "permsaddle/scores.hpp"

#include <cmath>
#include <functional>
#include <utility>

#include "permsaddle/errors.hpp"
#include "permsaddle/normal.hpp"

namespace permsaddle {

std::string to_string(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::spearman: return "spearman";
    case ScoreKind::fisher_yates: return "fisher_yates";
    case ScoreKind::van_der_waerden: return "van_der_waerden";
    case ScoreKind::quadrant: return "quadrant";
    case ScoreKind::custom: return "custom";
  }
  return "custom";
}

ScoreKind score_kind_from_string(const std::string& name) {
  if (name == "spearman") return ScoreKind::spearman;
  if (name == "fisher_yates") return ScoreKind::fisher_yates;
  if (name == "van_der_waerden") return ScoreKind::van_der_waerden;
  if (name == "quadrant") return ScoreKind::quadrant;
  if (name == "custom") return ScoreKind::custom;
  throw invalid_input("unknown score kind: " + name);
}

namespace {

void require_size(int n, const char* who) {
  if (n < 2) throw invalid_input(std::string(who) + ": need N >= 2, got " + std::to_string(n));
}

// ---- Gauss-Legendre machinery for the Fisher-Yates scores ----

struct GlRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

// Nodes by Newton iteration on P_n from Chebyshev starting points.
GlRule gauss_legendre(int n) {
  GlRule rule;
  rule.nodes.resize(std::size_t(n));
  rule.weights.resize(std::size_t(n));
  for (int k = 0; k < (n + 1) / 2; ++k) {
    double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[std::size_t(k)] = -x;  // ascending order
    rule.weights[std::size_t(k)] = w;
    rule.nodes[std::size_t(n - 1 - k)] = x;
    rule.weights[std::size_t(n - 1 - k)] = w;
  }
  if (n % 2 == 1) rule.nodes[std::size_t(n / 2)] = 0.0;
  return rule;
}

double gl_panel(const GlRule& rule, const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    sum += rule.weights[k] * f(mid + half * rule.nodes[k]);
  }
  return half * sum;
}

double adaptive_panel(const GlRule& rule, const std::function<double(double)>& f, double a,
                      double b, double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gl_panel(rule, f, a, mid);
  const double right = gl_panel(rule, f, mid, b);
  if (depth <= 0 || std::abs(left + right - whole) <= tol) return left + right;
  return adaptive_panel(rule, f, a, mid, left, 0.5 * tol, depth - 1) +
         adaptive_panel(rule, f, mid, b, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  static const GlRule rule = gauss_legendre(20);
  const int panels = 8;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double pa = a + (b - a) * k / panels;
    const double pb = a + (b - a) * (k + 1) / panels;
    total += adaptive_panel(rule, f, pa, pb, gl_panel(rule, f, pa, pb), tol / panels, 30);
  }
  return total;
}

double log_norm_cdf(double u) { return std::log(0.5 * std::erfc(-u / M_SQRT2)); }

// E U_(i) = N * C(N-1, i-1) * Integral of u phi(u) Phi(u)^{i-1} (1-Phi(u))^{N-i}.
double expected_order_statistic(int i, int n) {
  const double log_coeff =
      std::lgamma(n + 1.0) - std::lgamma(double(i)) - std::lgamma(double(n - i + 1));
  const auto integrand = [=](double u) {
    const double log_density = log_coeff - 0.5 * u * u - 0.5 * std::log(2.0 * M_PI) +
                               (i - 1.0) * log_norm_cdf(u) + (n - i) * log_norm_cdf(-u);
    return u * std::exp(log_density);
  };
  return integrate(integrand, -10.0, 10.0, 1e-13);
}

}  // namespace

ScoreVector spearman_scores(int n) {
  require_size(n, "spearman_scores");
  ScoreVector sv;
  sv.kind = ScoreKind::spearman;
  sv.values.resize(std::size_t(n));
  for (int i = 1; i <= n; ++i) sv.values[std::size_t(i - 1)] = double(i);
  return sv;
}

ScoreVector van_der_waerden_scores(int n) {
  require_size(n, "van_der_waerden_scores");
  ScoreVector sv;
  sv.kind = ScoreKind::van_der_waerden;
  sv.values.resize(std::size_t(n));
  // Compute the lower half and mirror; norm_quantile is reflection-exact
  // but the arguments i/(N+1) and (N+1-i)/(N+1) are not, so mirroring keeps
  // the vector antisymmetric and zero-sum to rounding.
  for (int i = 1; 2 * i <= n + 1; ++i) {
    const double q = norm_quantile(double(i) / (n + 1.0));
    sv.values[std::size_t(i - 1)] = q;
    sv.values[std::size_t(n - i)] = -q;
  }
  if (n % 2 == 1) sv.values[std::size_t(n / 2)] = 0.0;  // not -0.0
  return sv;
}

ScoreVector fisher_yates_scores(int n) {
  require_size(n, "fisher_yates_scores");
  ScoreVector sv;
  sv.kind = ScoreKind::fisher_yates;
  sv.values.resize(std::size_t(n));
  for (int i = 1; 2 * i <= n + 1; ++i) {
    const double e = expected_order_statistic(i, n);
    sv.values[std::size_t(i - 1)] = e;
    sv.values[std::size_t(n - i)] = -e;  // symmetry of the normal
  }
  if (n % 2 == 1) sv.values[std::size_t(n / 2)] = 0.0;
  return sv;
}

ScoreVector quadrant_scores(int n) {
  require_size(n, "quadrant_scores");
  ScoreVector sv;
  sv.kind = ScoreKind::quadrant;
  sv.values.resize(std::size_t(n));
  for (int i = 1; i <= n; ++i) {
    const double centered = i - (n + 1.0) / 2.0;
    sv.values[std::size_t(i - 1)] = centered > 0.0 ? 1.0 : (centered < 0.0 ? -1.0 : 0.0);
  }
  return sv;
}

ScoreVector custom_scores(const std::vector<double>& values) {
  if (values.size() < 2) {
    throw invalid_input("custom_scores: need at least 2 scores, got " +
                        std::to_string(values.size()));
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) {
      throw invalid_input("custom_scores: non-finite score at position " + std::to_string(k + 1));
    }
  }
  ScoreVector sv;
  sv.kind = ScoreKind::custom;
  sv.values = values;
  return sv;
}

ScoreVector scores_by_kind(ScoreKind kind, int n) {
  switch (kind) {
    case ScoreKind::spearman: return spearman_scores(n);
    case ScoreKind::fisher_yates: return fisher_yates_scores(n);
    case ScoreKind::van_der_waerden: return van_der_waerden_scores(n);
    case ScoreKind::quadrant: return quadrant_scores(n);
    case ScoreKind::custom: break;
  }
  throw invalid_input("scores_by_kind: custom scores need explicit values");
}

}  // namespace permsaddle

#include "permsaddle/rankstat.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "permsaddle/errors.hpp"

namespace permsaddle {

namespace {

// Sorts indices of v ascending and reports the first tied pair, if any.
std::vector<int> sorted_order(const std::vector<double>& v, char coordinate) {
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int lhs, int rhs) { return v[std::size_t(lhs)] < v[std::size_t(rhs)]; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const int i = order[k - 1], j = order[k];
    if (v[std::size_t(i)] == v[std::size_t(j)]) {
      throw tie_error(coordinate, std::min(i, j) + 1, std::max(i, j) + 1, v[std::size_t(i)]);
    }
  }
  return order;
}

}  // namespace

tie_error::tie_error(char coordinate, int row_a, int row_b, double value)
    : invalid_input(std::string("tied values in ") + coordinate + " at rows " +
                    std::to_string(row_a) + " and " + std::to_string(row_b) + " (value " +
                    std::to_string(value) + "); ties are not supported"),
      coordinate(coordinate),
      row_a(row_a),
      row_b(row_b),
      value(value) {}

void validate_paired_sample(const PairedSample& sample) {
  if (sample.x.size() != sample.y.size()) {
    throw invalid_input("paired sample: x and y lengths differ (" +
                        std::to_string(sample.x.size()) + " vs " +
                        std::to_string(sample.y.size()) + ")");
  }
  if (sample.x.size() < 2) throw invalid_input("paired sample: need N >= 2");
  for (std::size_t k = 0; k < sample.x.size(); ++k) {
    if (!std::isfinite(sample.x[k]) || !std::isfinite(sample.y[k])) {
      throw invalid_input("paired sample: non-finite value at row " + std::to_string(k + 1));
    }
  }
  sorted_order(sample.x, 'x');
  sorted_order(sample.y, 'y');
}

RankConfiguration make_rank_configuration(std::vector<int> ranks) {
  const int n = int(ranks.size());
  if (n < 2) throw invalid_input("rank configuration: need N >= 2");
  std::vector<bool> seen(std::size_t(n), false);
  for (int r : ranks) {
    if (r < 1 || r > n || seen[std::size_t(r - 1)]) {
      throw invalid_input("rank configuration: not a permutation of 1.." + std::to_string(n));
    }
    seen[std::size_t(r - 1)] = true;
  }
  return RankConfiguration{std::move(ranks), n};
}

RankConfiguration rank_pairs(const PairedSample& sample) {
  validate_paired_sample(sample);
  const int n = sample.n();
  const std::vector<int> by_x = sorted_order(sample.x, 'x');
  const std::vector<int> by_y = sorted_order(sample.y, 'y');
  // rank_of_row[k] = rank of y value in row k among all y.
  std::vector<int> rank_of_row(static_cast<std::size_t>(n));
  for (int r = 1; r <= n; ++r) rank_of_row[std::size_t(by_y[std::size_t(r - 1)])] = r;
  RankConfiguration cfg;
  cfg.n = n;
  cfg.ranks.resize(std::size_t(n));
  for (int i = 0; i < n; ++i) cfg.ranks[std::size_t(i)] = rank_of_row[std::size_t(by_x[std::size_t(i)])];
  return cfg;
}

StatisticSpec build_spec(const ScoreVector& a, const ScoreVector& b) {
  const int n = a.n();
  if (n != b.n()) {
    throw invalid_input("build_spec: score vectors differ in length (" + std::to_string(n) +
                        " vs " + std::to_string(b.n()) + ")");
  }
  if (n < 2) throw invalid_input("build_spec: need N >= 2");

  StatisticSpec spec;
  spec.a = a;
  spec.b = b;

  const double a_sum = std::accumulate(a.values.begin(), a.values.end(), 0.0);
  const double b_sum = std::accumulate(b.values.begin(), b.values.end(), 0.0);
  const double a_bar = a_sum / n, b_bar = b_sum / n;
  double a_ss = 0.0, b_ss = 0.0;
  for (double v : a.values) a_ss += (v - a_bar) * (v - a_bar);
  for (double v : b.values) b_ss += (v - b_bar) * (v - b_bar);
  if (b_ss == 0.0) {
    throw degenerate_spec_error("build_spec: constant rank scores give a degenerate statistic");
  }
  if (a_ss == 0.0) {
    throw degenerate_spec_error(
        "build_spec: constant regression scores give a degenerate statistic");
  }

  const double b_last = b.values[std::size_t(n - 1)];
  spec.q_offset = b_last * a_sum;
  spec.mean = n * a_bar * b_bar;
  spec.variance = a_ss * b_ss / (n - 1.0);

  spec.r.resize(n, n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n - 1; ++j) {
      spec.r(i, j) = a.values[std::size_t(i)] * (b.values[std::size_t(j)] - b_last);
    }
  }
  return spec;
}

double statistic_value(const StatisticSpec& spec, const RankConfiguration& ranks) {
  if (spec.n() != ranks.n) {
    throw invalid_input("statistic_value: spec is for N=" + std::to_string(spec.n()) +
                        " but ranks have N=" + std::to_string(ranks.n));
  }
  double v = 0.0;
  for (int i = 0; i < ranks.n; ++i) {
    v += spec.a.values[std::size_t(i)] * spec.b.at_rank(ranks.ranks[std::size_t(i)]);
  }
  // the indicator decomposition is what the saddlepoint machinery tilts
  assert(std::abs(v - statistic_value_indicator_form(spec, ranks)) <=
         1e-9 * std::max(1.0, std::abs(v)));
  return v;
}

double statistic_value_indicator_form(const StatisticSpec& spec, const RankConfiguration& ranks) {
  if (spec.n() != ranks.n) {
    throw invalid_input("statistic_value_indicator_form: dimension mismatch");
  }
  const int n = ranks.n;
  // a_by_rank[j-1] = a_i for the (single) i with R_i = j.
  std::vector<double> a_by_rank(std::size_t(n), 0.0);
  for (int i = 0; i < n; ++i) {
    a_by_rank[std::size_t(ranks.ranks[std::size_t(i)] - 1)] = spec.a.values[std::size_t(i)];
  }
  const double b_last = spec.b.values[std::size_t(n - 1)];
  double v = 0.0;
  for (int j = 0; j < n - 1; ++j) {
    v += (spec.b.values[std::size_t(j)] - b_last) * a_by_rank[std::size_t(j)];
  }
  return v + spec.q_offset;
}

double d_statistic(const RankConfiguration& ranks) {
  double d = 0.0;
  for (int i = 0; i < ranks.n; ++i) {
    const double diff = ranks.ranks[std::size_t(i)] - (i + 1.0);
    d += diff * diff;
  }
  return d;
}

double spearman_rho(const RankConfiguration& ranks) {
  const double n = ranks.n;
  return 1.0 - 6.0 * d_statistic(ranks) / (n * (n * n - 1.0));
}

double weighted_mann(const RankConfiguration& ranks) {
  const double n = ranks.n;
  return n * (n * n - 1.0) / 6.0 - 0.5 * d_statistic(ranks);
}

std::pair<double, double> support_range(const StatisticSpec& spec) {
  std::vector<double> a_sorted = spec.a.values;
  std::vector<double> b_sorted = spec.b.values;
  std::sort(a_sorted.begin(), a_sorted.end());
  std::sort(b_sorted.begin(), b_sorted.end());
  double lo = 0.0, hi = 0.0;
  const std::size_t n = a_sorted.size();
  for (std::size_t i = 0; i < n; ++i) {
    hi += a_sorted[i] * b_sorted[i];            // like with like
    lo += a_sorted[i] * b_sorted[n - 1 - i];    // like with unlike
  }
  return {lo, hi};
}

}  // namespace permsaddle

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "permsaddle/errors.hpp"
#include "permsaddle/normal.hpp"
#include "permsaddle/rng.hpp"
#include "permsaddle/scores.hpp"

using namespace permsaddle;

namespace {

// Monte Carlo oracle for expected normal order statistics: sample sets of N
// standard normals (Box-Muller over the portable generator), sort, and
// average antithetically — each sample contributes (z_(i) - z_(n+1-i))/2 to
// position i, which is the same expectation (the negated sample is equally
// likely) with the shared-mean fluctuation cancelled.
struct OrderStatEstimate {
  std::vector<double> mean;
  std::vector<double> std_error;
};

OrderStatEstimate mc_order_statistics(int n, int samples, std::uint64_t seed) {
  std::mt19937_64 eng = make_engine(seed);
  std::vector<double> draw(static_cast<std::size_t>(n));
  std::vector<double> sum(std::size_t(n), 0.0), sum_sq(std::size_t(n), 0.0);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < n; i += 2) {
      const double u1 = uniform01(eng), u2 = uniform01(eng);
      const double radius = std::sqrt(-2.0 * std::log(u1));
      draw[std::size_t(i)] = radius * std::cos(2.0 * M_PI * u2);
      if (i + 1 < n) draw[std::size_t(i + 1)] = radius * std::sin(2.0 * M_PI * u2);
    }
    std::sort(draw.begin(), draw.end());
    for (int i = 0; i < n; ++i) {
      const double symmetrized =
          0.5 * (draw[std::size_t(i)] - draw[std::size_t(n - 1 - i)]);
      sum[std::size_t(i)] += symmetrized;
      sum_sq[std::size_t(i)] += symmetrized * symmetrized;
    }
  }
  OrderStatEstimate est;
  est.mean.resize(std::size_t(n));
  est.std_error.resize(std::size_t(n));
  for (int i = 0; i < n; ++i) {
    const double m = sum[std::size_t(i)] / samples;
    const double var = sum_sq[std::size_t(i)] / samples - m * m;
    est.mean[std::size_t(i)] = m;
    est.std_error[std::size_t(i)] = std::sqrt(var / samples);
  }
  return est;
}

double vector_sum(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

}  // namespace

TEST_CASE("spearman scores are the identity") {
  CHECK(spearman_scores(3).values == std::vector<double>({1.0, 2.0, 3.0}));
  CHECK(spearman_scores(2).values == std::vector<double>({1.0, 2.0}));
  const ScoreVector sv = spearman_scores(15);
  REQUIRE(sv.n() == 15);
  for (int i = 1; i <= 15; ++i) CHECK(sv.at_rank(i) == double(i));
  CHECK(sv.kind == ScoreKind::spearman);
  CHECK_THROWS_AS(spearman_scores(1), invalid_input);
}

TEST_CASE("van der Waerden scores are normal quantiles") {
  const ScoreVector sv3 = van_der_waerden_scores(3);
  CHECK(sv3.values[1] == 0.0);  // Phi^-1(1/2)
  CHECK(sv3.values[2] == doctest::Approx(0.6744897501960817).epsilon(1e-12));
  CHECK(sv3.values[0] == -sv3.values[2]);

  const ScoreVector sv2 = van_der_waerden_scores(2);
  CHECK(sv2.values[0] == doctest::Approx(norm_quantile(1.0 / 3.0)).epsilon(1e-15));
  CHECK(vector_sum(sv2.values) == 0.0);
  CHECK_THROWS_AS(van_der_waerden_scores(0), invalid_input);
}

TEST_CASE("Fisher-Yates N=2 matches the closed form 1/sqrt(pi)") {
  const ScoreVector sv = fisher_yates_scores(2);
  const double expected = 1.0 / std::sqrt(M_PI);  // E max of 2 iid standard normals
  CHECK(sv.values[1] == doctest::Approx(expected).epsilon(1e-9));
  CHECK(sv.values[0] == doctest::Approx(-expected).epsilon(1e-9));

  // and against a 10^7-draw Monte Carlo estimate
  const OrderStatEstimate mc = mc_order_statistics(2, 10000000, 2024);
  CHECK(std::abs(mc.mean[1] - expected) < 3.0 * mc.std_error[1]);
}

TEST_CASE("Fisher-Yates small-N structure") {
  const ScoreVector sv3 = fisher_yates_scores(3);
  CHECK(sv3.values[1] == 0.0);  // middle order statistic of an odd sample

  const ScoreVector sv4 = fisher_yates_scores(4);
  REQUIRE(sv4.n() == 4);
  CHECK(std::abs(vector_sum(sv4.values)) < 1e-10);
  CHECK(std::is_sorted(sv4.values.begin(), sv4.values.end()));
  CHECK(sv4.values[2] < sv4.values[3]);

  const OrderStatEstimate mc4 = mc_order_statistics(4, 4000000, 77);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(sv4.values[std::size_t(i)] - mc4.mean[std::size_t(i)]) < 1e-3);
  }
}

TEST_CASE("Fisher-Yates agrees with Monte Carlo order-statistic means") {
  for (const int n : {2, 5, 10}) {
    CAPTURE(n);
    const ScoreVector sv = fisher_yates_scores(n);
    const OrderStatEstimate mc = mc_order_statistics(n, 2000000, 1000 + std::uint64_t(n));
    for (int i = 0; i < n; ++i) {
      // the middle position of an odd sample has zero estimator variance
      CHECK(std::abs(sv.values[std::size_t(i)] - mc.mean[std::size_t(i)]) <=
            3.0 * mc.std_error[std::size_t(i)]);
    }
  }
}

TEST_CASE("quadrant scores are signs around the middle") {
  CHECK(quadrant_scores(4).values == std::vector<double>({-1.0, -1.0, 1.0, 1.0}));
  CHECK(quadrant_scores(5).values == std::vector<double>({-1.0, -1.0, 0.0, 1.0, 1.0}));
  CHECK(quadrant_scores(2).values == std::vector<double>({-1.0, 1.0}));
}

TEST_CASE("custom scores validate and pass through") {
  const ScoreVector sv = custom_scores({0.5, -0.2, 1.0});
  CHECK(sv.kind == ScoreKind::custom);
  CHECK(sv.values == std::vector<double>({0.5, -0.2, 1.0}));
  CHECK_THROWS_AS(custom_scores({}), invalid_input);
  CHECK_THROWS_AS(custom_scores({1.0}), invalid_input);
  CHECK_THROWS_AS(custom_scores({1.0, std::nan("")}), invalid_input);
  CHECK_THROWS_AS(custom_scores({1.0, std::numeric_limits<double>::infinity()}), invalid_input);
}

TEST_CASE("named score families are antisymmetric and zero-sum for N up to 50") {
  for (int n = 2; n <= 50; ++n) {
    CAPTURE(n);
    const ScoreVector quad = quadrant_scores(n);
    const ScoreVector vdw = van_der_waerden_scores(n);
    const ScoreVector fy = fisher_yates_scores(n);
    for (int i = 1; i <= n; ++i) {
      CHECK(quad.at_rank(i) == -quad.at_rank(n + 1 - i));
      CHECK(std::abs(vdw.at_rank(i) + vdw.at_rank(n + 1 - i)) < 1e-8);
      CHECK(std::abs(fy.at_rank(i) + fy.at_rank(n + 1 - i)) < 1e-8);
    }
    CHECK(std::abs(vector_sum(quad.values)) == 0.0);
    CHECK(std::abs(vector_sum(vdw.values)) < 1e-10);
    CHECK(std::abs(vector_sum(fy.values)) < 1e-10);
    // strictly increasing except quadrant's ties
    for (int i = 1; i < n; ++i) {
      CHECK(vdw.at_rank(i) < vdw.at_rank(i + 1));
      CHECK(fy.at_rank(i) < fy.at_rank(i + 1));
    }
  }
}

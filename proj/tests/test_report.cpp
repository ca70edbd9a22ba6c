#include <doctest.h>

#include "permsaddle/report.hpp"

using namespace permsaddle;

TEST_CASE("report JSON round-trips a full report") {
  PValueReport report;
  report.n = 15;
  report.v0 = 1006.0;
  report.saddlepoint = 0.2763;
  report.monte_carlo = 0.2768;
  report.mc_std_error = 0.00045;
  report.mc_replicates = 1000000;
  report.normal = 0.2693;
  report.method_diagnostics = {{"w_hat", 0.6}, {"u_hat", 0.61}, {"iterations", 6.0},
                               {"seed", 12345.0}};
  report.method_errors = {{"exact", "N = 15 exceeds the enumeration cap of 10"}};

  const nlohmann::json doc = report_to_json(report);
  const PValueReport parsed = report_from_json(doc);
  CHECK(parsed.n == report.n);
  CHECK(parsed.v0 == report.v0);
  CHECK(parsed.saddlepoint == report.saddlepoint);
  CHECK(parsed.exact == report.exact);
  CHECK(parsed.monte_carlo == report.monte_carlo);
  CHECK(parsed.mc_std_error == report.mc_std_error);
  CHECK(parsed.mc_replicates == report.mc_replicates);
  CHECK(parsed.normal == report.normal);
  CHECK(parsed.method_diagnostics == report.method_diagnostics);
  CHECK(parsed.method_errors == report.method_errors);
}

TEST_CASE("report JSON round-trips a sparse report and survives extra keys") {
  PValueReport report;
  report.n = 3;
  report.v0 = 13.0;
  report.exact = 0.5;

  nlohmann::json doc = report_to_json(report);
  doc["input"] = {{"path", "somewhere.csv"}};  // CLI-style extra key
  const PValueReport parsed = report_from_json(doc);
  CHECK(parsed.n == 3);
  CHECK(parsed.v0 == 13.0);
  CHECK(parsed.exact == 0.5);
  CHECK_FALSE(parsed.saddlepoint.has_value());
  CHECK_FALSE(parsed.monte_carlo.has_value());
  CHECK_FALSE(parsed.normal.has_value());
}

#include <doctest.h>

#include <sstream>

#include "permsaddle/errors.hpp"
#include "permsaddle/io.hpp"

using namespace permsaddle;

TEST_CASE("read_paired_sample parses CSV with a header") {
  std::istringstream in("x,y\n1,10\n2,20\n3,30\n");
  const PairedSample sample = read_paired_sample(in);
  CHECK(sample.x == std::vector<double>({1, 2, 3}));
  CHECK(sample.y == std::vector<double>({10, 20, 30}));
}

TEST_CASE("read_paired_sample parses whitespace-delimited text without header") {
  std::istringstream in("1.5  -2.25\n# a comment\n\n3.0\t4.125\n");
  const PairedSample sample = read_paired_sample(in);
  CHECK(sample.x == std::vector<double>({1.5, 3.0}));
  CHECK(sample.y == std::vector<double>({-2.25, 4.125}));
}

TEST_CASE("read_paired_sample reports the offending line") {
  std::istringstream in("1,10\n2,twenty\n");
  try {
    read_paired_sample(in);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line == 2);
  }
  std::istringstream wide("1,10\n2,20,30\n");
  CHECK_THROWS_AS(read_paired_sample(wide), parse_error);
}

TEST_CASE("read_paired_sample needs at least two rows") {
  std::istringstream in("x,y\n1,10\n");
  CHECK_THROWS_AS(read_paired_sample(in), parse_error);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_paired_sample(empty), parse_error);
}

TEST_CASE("read_paired_sample_file rejects a missing path") {
  CHECK_THROWS_AS(read_paired_sample_file("/nonexistent/file.csv"), parse_error);
}

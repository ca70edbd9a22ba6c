#pragma once

#include <stdexcept>
#include <string>

namespace permsaddle {

// Bad sizes, non-finite values, out-of-range parameters.
class invalid_input : public std::runtime_error {
 public:
  explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// Tied observations within one coordinate of a paired sample. The
// permutation null requires all N! rank orderings to be equally likely,
// which fails under ties, so tied inputs are rejected outright.
class tie_error : public invalid_input {
 public:
  tie_error(char coordinate, int row_a, int row_b, double value);

  char coordinate;  // 'x' or 'y'
  int row_a;        // 1-based rows of the tied pair
  int row_b;
  double value;
};

// Malformed input text (data files, score files, study configs).
class parse_error : public invalid_input {
 public:
  parse_error(const std::string& what, int line) : invalid_input(what), line(line) {}
  int line;  // 1-based, 0 when not tied to a specific line
};

// A score pair whose permutation distribution is a point mass.
class degenerate_spec_error : public invalid_input {
 public:
  explicit degenerate_spec_error(const std::string& what) : invalid_input(what) {}
};

// Saddlepoint solver did not converge (or was handed a non-converged solution).
class solver_error : public std::runtime_error {
 public:
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace permsaddle

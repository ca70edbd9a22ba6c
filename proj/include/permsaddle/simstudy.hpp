#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permsaddle/rankstat.hpp"

namespace permsaddle {

struct StudyConfig {
  std::vector<int> sample_sizes;
  std::vector<double> lambdas;   // shared-noise weights; 0 is the null
  int datasets_per_cell = 0;
  std::uint64_t truth_replicates = 0;  // MC permutations behind the "true" p-value
  std::uint64_t seed = 0;
  ScoreKind score_kind = ScoreKind::spearman;
};

void validate_config(const StudyConfig& config);
StudyConfig load_study_config(const std::string& path);  // JSON file

struct StudyCell {
  int n = 0;
  double lambda = 0.0;
  double sad_prop = 0.0;         // fraction of datasets where the saddlepoint
                                 // p-value beat the normal one (ties count 0.5)
  double abs_err_sad = 0.0;      // mean |saddlepoint - truth|
  double rel_abs_err_sad = 0.0;  // mean |saddlepoint - truth| / truth
  double abs_err_norm = 0.0;     // mean |normal - truth|
  int datasets = 0;              // datasets contributing to the averages
  int failures = 0;              // saddlepoint solver failures (excluded)
};

// One dataset from the shared-noise dependence model
//   X_i = X'_i + lambda e_i,  Y_i = Y'_i + lambda e_i
// with X' standard logistic, Y' standard Gumbel, e uniform(0,1), all drawn
// by inverse CDF from the portable generator. lambda = 0 gives independence.
PairedSample generate_dependent_pairs(int n, double lambda, std::uint64_t seed);

// For each (n, lambda) cell: generate datasets, compute the observed
// statistic, the MC truth, the saddlepoint p and the normal p, and aggregate
// the comparison metrics. Deterministic given the config: every dataset's
// streams derive from (seed, n, lambda, dataset index).
std::vector<StudyCell> run_study(const StudyConfig& config);

std::string study_csv(const std::vector<StudyCell>& cells);
std::string study_table(const std::vector<StudyCell>& cells);

}  // namespace permsaddle

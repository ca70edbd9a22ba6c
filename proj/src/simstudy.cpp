#include "permsaddle/simstudy.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "permsaddle/errors.hpp"
#include "permsaddle/oracles.hpp"
#include "permsaddle/rng.hpp"
#include "permsaddle/saddle.hpp"

namespace permsaddle {

namespace {

std::uint64_t dataset_seed(std::uint64_t seed, int n, double lambda, int dataset) {
  std::uint64_t s = derive_seed(seed, std::uint64_t(n));
  s = derive_seed(s, std::bit_cast<std::uint64_t>(lambda));
  return derive_seed(s, std::uint64_t(dataset));
}

std::optional<std::size_t> tied_row(const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) return j;
    }
  }
  return std::nullopt;
}

double draw_logistic(std::mt19937_64& eng) {
  const double u = uniform01(eng);
  return std::log(u / (1.0 - u));
}

double draw_gumbel(std::mt19937_64& eng) {
  return -std::log(-std::log(uniform01(eng)));
}

}  // namespace

void validate_config(const StudyConfig& config) {
  if (config.sample_sizes.empty()) throw invalid_input("study config: no sample sizes");
  for (int n : config.sample_sizes) {
    if (n < 2) throw invalid_input("study config: sample sizes must be >= 2");
  }
  if (config.lambdas.empty()) throw invalid_input("study config: no lambda values");
  for (double lambda : config.lambdas) {
    if (!(lambda >= 0.0)) throw invalid_input("study config: lambdas must be >= 0");
  }
  if (config.datasets_per_cell < 1) throw invalid_input("study config: datasets_per_cell must be >= 1");
  if (config.truth_replicates < 1) throw invalid_input("study config: truth_replicates must be >= 1");
  if (config.score_kind == ScoreKind::custom) {
    throw invalid_input("study config: custom scores are not supported in the study driver");
  }
}

StudyConfig load_study_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open config file: " + path, 0);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("config is not valid JSON: ") + e.what(), 0);
  }
  StudyConfig config;
  try {
    config.sample_sizes = doc.at("sample_sizes").get<std::vector<int>>();
    config.lambdas = doc.at("lambdas").get<std::vector<double>>();
    config.datasets_per_cell = doc.at("datasets_per_cell").get<int>();
    config.truth_replicates = doc.at("truth_replicates").get<std::uint64_t>();
    config.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("score_kind")) {
      config.score_kind = score_kind_from_string(doc.at("score_kind").get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("bad config field: ") + e.what(), 0);
  }
  validate_config(config);
  return config;
}

PairedSample generate_dependent_pairs(int n, double lambda, std::uint64_t seed) {
  if (n < 2) throw invalid_input("generate_dependent_pairs: need N >= 2");
  if (!(lambda >= 0.0)) throw invalid_input("generate_dependent_pairs: lambda must be >= 0");
  std::mt19937_64 eng = make_engine(seed);
  PairedSample sample;
  sample.x.resize(std::size_t(n));
  sample.y.resize(std::size_t(n));
  std::vector<double> shared(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double xp = draw_logistic(eng);
    const double yp = draw_gumbel(eng);
    shared[std::size_t(i)] = uniform01(eng);
    sample.x[std::size_t(i)] = xp + lambda * shared[std::size_t(i)];
    sample.y[std::size_t(i)] = yp + lambda * shared[std::size_t(i)];
  }
  // Exact float collisions have probability ~0 but would invalidate the
  // rank construction; redraw the private part of the offending row.
  while (auto row = tied_row(sample.x)) {
    sample.x[*row] = draw_logistic(eng) + lambda * shared[*row];
  }
  while (auto row = tied_row(sample.y)) {
    sample.y[*row] = draw_gumbel(eng) + lambda * shared[*row];
  }
  return sample;
}

std::vector<StudyCell> run_study(const StudyConfig& config) {
  validate_config(config);
  std::vector<StudyCell> cells;
  for (int n : config.sample_sizes) {
    const ScoreVector scores = scores_by_kind(config.score_kind, n);
    const StatisticSpec spec = build_spec(scores, scores);
    for (double lambda : config.lambdas) {
      StudyCell cell;
      cell.n = n;
      cell.lambda = lambda;
      double wins = 0.0, err_sad_sum = 0.0, err_norm_sum = 0.0, rel_sum = 0.0;
      int used = 0, rel_count = 0;
      for (int k = 0; k < config.datasets_per_cell; ++k) {
        const std::uint64_t ds_seed = dataset_seed(config.seed, n, lambda, k);
        const PairedSample sample = generate_dependent_pairs(n, lambda, ds_seed);
        const RankConfiguration ranks = rank_pairs(sample);
        const double v0 = statistic_value(spec, ranks);

        double sad = 0.0;
        try {
          sad = saddlepoint_pvalue(spec, v0);
        } catch (const solver_error&) {
          ++cell.failures;
          continue;
        }
        const double truth =
            mc_pvalue(spec, v0, config.truth_replicates, derive_seed(ds_seed, 1)).p;
        const double normal = normal_pvalue(spec, v0);

        const double err_sad = std::abs(sad - truth);
        const double err_norm = std::abs(normal - truth);
        if (err_sad < err_norm) {
          wins += 1.0;
        } else if (err_sad == err_norm) {
          wins += 0.5;
        }
        err_sad_sum += err_sad;
        err_norm_sum += err_norm;
        if (truth > 0.0) {
          rel_sum += err_sad / truth;
          ++rel_count;
        }
        ++used;
      }
      cell.datasets = used;
      if (used > 0) {
        cell.sad_prop = wins / used;
        cell.abs_err_sad = err_sad_sum / used;
        cell.abs_err_norm = err_norm_sum / used;
      }
      if (rel_count > 0) cell.rel_abs_err_sad = rel_sum / rel_count;
      cells.push_back(cell);
    }
  }
  return cells;
}

std::string study_csv(const std::vector<StudyCell>& cells) {
  std::ostringstream out;
  out << "n,lambda,sad_prop,abs_err_sad,rel_abs_err_sad,abs_err_norm,failures\n";
  char row[256];
  for (const StudyCell& cell : cells) {
    std::snprintf(row, sizeof(row), "%d,%.10g,%.10g,%.10g,%.10g,%.10g,%d\n", cell.n, cell.lambda,
                  cell.sad_prop, cell.abs_err_sad, cell.rel_abs_err_sad, cell.abs_err_norm,
                  cell.failures);
    out << row;
  }
  return out.str();
}

std::string study_table(const std::vector<StudyCell>& cells) {
  std::ostringstream out;
  char row[256];
  std::snprintf(row, sizeof(row), "%4s %8s %10s %14s %16s %14s %9s\n", "n", "lambda", "sad_prop",
                "abs_err_sad", "rel_abs_err_sad", "abs_err_norm", "failures");
  out << row;
  for (const StudyCell& cell : cells) {
    std::snprintf(row, sizeof(row), "%4d %8.3g %10.4f %14.6f %16.6f %14.6f %9d\n", cell.n,
                  cell.lambda, cell.sad_prop, cell.abs_err_sad, cell.rel_abs_err_sad,
                  cell.abs_err_norm, cell.failures);
    out << row;
  }
  return out.str();
}

}  // namespace permsaddle

#include "permsaddle/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "permsaddle/errors.hpp"
#include "permsaddle/normal.hpp"
#include "permsaddle/rng.hpp"

namespace permsaddle {

namespace {

// Absolute slack when classifying statistic values against v0, absorbing
// float noise from non-integer scores. Integer-score statistics are exact
// in double arithmetic, so the slack never misclassifies them.
constexpr double kTieTolerance = 1e-9;

constexpr std::uint64_t kMcChunk = 1 << 16;

struct TailCounts {
  std::uint64_t greater = 0;
  std::uint64_t equal = 0;
};

double combine(const TailCounts& counts, std::uint64_t total, TieRule ties) {
  const double tie_weight = ties == TieRule::half ? 0.5 : 1.0;
  return (double(counts.greater) + tie_weight * double(counts.equal)) / double(total);
}

TailCounts mc_chunk_counts(const StatisticSpec& spec, double v0, std::uint64_t replicates,
                           std::uint64_t chunk_seed) {
  const int n = spec.n();
  std::mt19937_64 eng = make_engine(chunk_seed);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  TailCounts counts;
  for (std::uint64_t rep = 0; rep < replicates; ++rep) {
    shuffle_in_place(perm, eng);
    double v = 0.0;
    for (int i = 0; i < n; ++i) {
      v += spec.a.values[std::size_t(i)] * spec.b.at_rank(perm[std::size_t(i)]);
    }
    if (v > v0 + kTieTolerance) {
      ++counts.greater;
    } else if (v >= v0 - kTieTolerance) {
      ++counts.equal;
    }
  }
  return counts;
}

}  // namespace

double exact_pvalue(const StatisticSpec& spec, double v0, TieRule ties) {
  const int n = spec.n();
  if (n > kExactEnumerationCap) {
    throw invalid_input("exact_pvalue: N = " + std::to_string(n) +
                        " exceeds the enumeration cap of " +
                        std::to_string(kExactEnumerationCap) + " (use the Monte Carlo oracle)");
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  TailCounts counts;
  std::uint64_t total = 0;
  do {
    double v = 0.0;
    for (int i = 0; i < n; ++i) {
      v += spec.a.values[std::size_t(i)] * spec.b.at_rank(perm[std::size_t(i)]);
    }
    if (v > v0 + kTieTolerance) {
      ++counts.greater;
    } else if (v >= v0 - kTieTolerance) {
      ++counts.equal;
    }
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return combine(counts, total, ties);
}

McResult mc_pvalue(const StatisticSpec& spec, double v0, std::uint64_t replicates,
                   std::uint64_t seed, TieRule ties) {
  if (replicates < 1) throw invalid_input("mc_pvalue: need at least 1 replicate");

  const std::uint64_t chunks = (replicates + kMcChunk - 1) / kMcChunk;
  std::vector<TailCounts> chunk_counts(static_cast<std::size_t>(chunks));

  const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = unsigned(std::min<std::uint64_t>(hardware, chunks));
  // Tallies are integers, so summing them is order-independent and the
  // result does not depend on the worker count.
  auto run_chunks = [&](unsigned worker) {
    for (std::uint64_t c = worker; c < chunks; c += workers) {
      const std::uint64_t count = std::min(kMcChunk, replicates - c * kMcChunk);
      chunk_counts[std::size_t(c)] = mc_chunk_counts(spec, v0, count, derive_seed(seed, c));
    }
  };
  if (workers <= 1) {
    run_chunks(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_chunks, w);
    for (std::thread& t : pool) t.join();
  }

  TailCounts totals;
  for (const TailCounts& c : chunk_counts) {
    totals.greater += c.greater;
    totals.equal += c.equal;
  }
  McResult result;
  result.p = combine(totals, replicates, ties);
  result.std_error = std::sqrt(result.p * (1.0 - result.p) / double(replicates));
  return result;
}

double normal_pvalue(const StatisticSpec& spec, double v0, double continuity_offset) {
  if (spec.variance <= 0.0) throw degenerate_spec_error("normal_pvalue: zero variance");
  const double z = (v0 - continuity_offset - spec.mean) / std::sqrt(spec.variance);
  return 1.0 - norm_cdf(z);
}

}  // namespace permsaddle

#pragma once

#include <cstdint>
#include <optional>

#include "ctvm/bmc.hpp"
#include "ctvm/graph.hpp"

namespace ctvm {

struct BctConfig {
  double eps = 0.1;
  std::optional<double> delta;  ///< defaults to 1/n
  double budget = 0.0;
  std::uint64_t master_seed = 0;
  /// Overrides the default count 2·Γ·(α(δ)+β(δ))²/(ε²·lOPT).
  std::optional<std::uint64_t> sample_count;
  unsigned threads = 1;
  bool lazy_greedy = true;
};

struct BctResult {
  SeedSet seeds;
  std::uint64_t samples_generated = 0;
  double delta = 0.0;
  double lopt = 0.0;
  double sampling_ms = 0.0;
  double greedy_ms = 0.0;
};

/// Static baseline: one pool of plain benefit samples of a fixed size, then the
/// budgeted greedy on the plain estimator (Γ/|R|)·Σ Cov.
BctResult run_bct_fixed(const Graph& g, const GraphConstants& consts, const BctConfig& cfg);

/// Default plain-sample count. A plain sample's indicator spans [0,1], so the
/// range factor ρ of the importance count is 1 here.
std::uint64_t bct_default_sample_count(const Graph& g, const GraphConstants& consts, double budget, double eps,
                                       double delta);

/// Uniform random order, adding each node that still fits.
SeedSet run_random(const Graph& g, double budget, std::uint64_t seed);

/// Out-degree descending (ties by id), adding each node that still fits.
SeedSet run_degree(const Graph& g, double budget);

}  // namespace ctvm

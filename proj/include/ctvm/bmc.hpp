#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ctvm/graph.hpp"
#include "ctvm/sampling.hpp"

namespace ctvm {

struct SeedSet {
  std::vector<NodeId> nodes;  ///< selection order
  double total_cost = 0.0;
  std::optional<double> est_benefit;  ///< absent for algorithms that never estimate
};

/// F(S) = per_sample · |{j : R_j ∩ S ≠ ∅}| + Σ_{v∈S} additive[v]
///
/// Monotone submodular: a coverage term plus a modular term. For an importance
/// pool per_sample = Φ/|R| and additive = (1-γ)b, which makes F the estimator B̂.
/// For a plain pool per_sample = Γ/|R| and additive = 0.
struct CoverageObjective {
  const SamplePool* pool = nullptr;  ///< may be null or empty: F is then purely additive
  double per_sample = 0.0;
  std::vector<double> additive;

  double operator()(std::span<const NodeId> seeds) const;
};

CoverageObjective make_objective(const SamplePool& pool, const GraphConstants& consts);

/// Objective with no samples: F(S) = Σ_{v∈S} b(v), exact when Φ = 0.
CoverageObjective additive_objective(const Graph& g);

struct IgaOptions {
  /// Lazy (priority-queue) argmax. The naive full rescan is kept for differential tests.
  bool lazy = true;
};

/// Cost-ratio greedy plus best feasible singleton for budgeted coverage.
///
/// The ratio greedy picks argmax gain/cost over the remaining candidates, adds it
/// when it fits the residual budget and drops it from the candidates either way.
/// Zero-cost candidates rank above every positive-cost one. Ties go to the larger
/// gain, then the smaller id. Candidates whose gain has dropped to zero are
/// discarded without being added. The better of the greedy set and the best
/// feasible singleton is returned (the greedy set on a tie).
SeedSet iga(const CoverageObjective& objective, std::span<const double> costs, double budget,
            IgaOptions options = {});

SeedSet iga(const SamplePool& pool, const Graph& g, const GraphConstants& consts, double budget,
            IgaOptions options = {});

}  // namespace ctvm

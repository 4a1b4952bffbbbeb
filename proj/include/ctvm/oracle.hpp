#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ctvm/graph.hpp"

namespace ctvm::oracle {

inline constexpr std::size_t kMaxExactEdges = 25;
inline constexpr std::size_t kMaxOptNodes = 15;

/// Expected total benefit of nodes reachable from `seeds`, by enumerating all
/// 2^m live-edge graphs. Throws std::length_error when m > kMaxExactEdges.
double exact_benefit(const Graph& g, std::span<const NodeId> seeds);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Forward IC simulation. Trial i uses the stream derived from (seed, i) and
/// per-trial values are summed in index order, so the result does not depend
/// on `threads`.
McEstimate monte_carlo_benefit(const Graph& g, std::span<const NodeId> seeds, std::uint64_t trials,
                               std::uint64_t seed, unsigned threads = 1);

struct OptResult {
  std::vector<NodeId> seeds;  ///< ascending
  double value = 0.0;
};

/// Best feasible seed set by exhaustive search. Ties go to the
/// lexicographically smallest sorted set. Requires n <= kMaxOptNodes and
/// m <= kMaxExactEdges.
OptResult exact_opt(const Graph& g, double budget);

/// Expected benefit of every subset of V at once, indexed by node bitmask.
/// Computed through per-node ancestor-set distributions, which is a different
/// route from exact_benefit's forward reachability. Same size guards as exact_opt.
std::vector<double> exact_benefit_all_subsets(const Graph& g);

}  // namespace ctvm::oracle

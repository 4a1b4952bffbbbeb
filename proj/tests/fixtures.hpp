#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "ctvm/graph.hpp"
#include "ctvm/rng.hpp"

namespace ctvm::testing {

struct NamedGraph {
  std::string name;
  Graph graph;
};

// Hand-built instances small enough for the exact oracles (n <= 8, m <= 12).
// Each has benefit-carrying nodes without in-edges, so Φ/Γ stays well below 1.
inline std::vector<NamedGraph> oracle_graphs() {
  std::vector<NamedGraph> gs;
  // 0 -> 1 -> 3 -> 4, 0 -> 2 -> 3
  gs.push_back({"diamond",
                Graph::build(5, {{0, 1, 0.6}, {0, 2, 0.3}, {1, 3, 0.5}, {2, 3, 0.7}, {3, 4, 0.4}}, true, {},
                             {1.0, 0.5, 0.5, 1.5, 0.2}, {1.0, 0.0, 1.0, 1.0, 1.0})});
  // 4-cycle with a chord and a pendant source
  gs.push_back({"cycle",
                Graph::build(5, {{0, 1, 0.5}, {1, 2, 0.5}, {2, 3, 0.5}, {3, 0, 0.5}, {0, 2, 0.2}, {4, 1, 0.8}}, true,
                             {}, {1.0, 1.0, 1.0, 1.0, 0.5}, {1.0, 1.0, 0.0, 1.0, 2.0})});
  // out-star with one edge back into the hub
  gs.push_back({"star",
                Graph::build(6, {{0, 1, 0.3}, {0, 2, 0.4}, {0, 3, 0.5}, {0, 4, 0.6}, {0, 5, 0.7}, {5, 0, 0.25}}, true,
                             {}, {3.0, 0.5, 0.5, 0.5, 0.5, 1.0}, {0.5, 1.0, 1.0, 1.0, 1.0, 0.0})});
  // two weakly linked triangles plus two isolated targets
  gs.push_back({"triangles",
                Graph::build(8,
                             {{0, 1, 0.9}, {1, 2, 0.9}, {2, 0, 0.9}, {3, 4, 0.2}, {4, 5, 0.2}, {5, 3, 0.2},
                              {2, 3, 0.5}, {5, 0, 0.1}},
                             true, {}, {1.0, 1.0, 1.0, 0.7, 0.7, 0.7, 0.3, 0.3},
                             {1.0, 0.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0})});
  // denser 7-node graph, 12 arcs, mixed probabilities including a tiny one
  gs.push_back({"dense",
                Graph::build(7,
                             {{0, 1, 0.35}, {0, 2, 0.6}, {1, 2, 0.15}, {1, 3, 0.5}, {2, 3, 0.25}, {2, 4, 0.45},
                              {3, 4, 0.7}, {3, 5, 0.05}, {4, 5, 0.55}, {4, 1, 0.3}, {5, 6, 0.001}, {6, 0, 0.4}},
                             true, {}, {2.0, 1.0, 1.5, 1.0, 0.5, 0.25, 1.0},
                             {0.0, 1.0, 1.0, 0.5, 1.0, 2.0, 1.0})});
  // in-tree converging on node 0, heavy benefit on leaves
  gs.push_back({"funnel",
                Graph::build(7, {{1, 0, 0.5}, {2, 0, 0.5}, {3, 1, 0.4}, {4, 1, 0.6}, {5, 2, 0.3}, {6, 2, 0.9}}, true,
                             {}, {0.5, 1.0, 1.0, 0.8, 0.8, 0.8, 0.8}, {1.0, 0.5, 0.5, 1.0, 1.0, 1.0, 1.0})});
  return gs;
}

// Random simple digraph with m arcs (m <= n(n-1)), p uniform in [0.05, 0.9],
// costs uniform in [0.2, 2.0], benefits 0 or 1 with probability 1/2 each
// (at least one 1).
inline Graph random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Arc> arcs;
  std::vector<char> used(n * n, 0);
  while (arcs.size() < m) {
    const auto u = static_cast<NodeId>(rng.below(n));
    const auto v = static_cast<NodeId>(rng.below(n));
    if (u == v || used[u * n + v]) continue;
    used[u * n + v] = 1;
    arcs.push_back({u, v, 0.05 + 0.85 * rng.uniform()});
  }
  std::vector<double> costs(n), benefits(n);
  for (auto& c : costs) c = 0.2 + 1.8 * rng.uniform();
  for (auto& b : benefits) b = rng.bernoulli(0.5) ? 1.0 : 0.0;
  benefits[rng.below(n)] = 1.0;
  return Graph::build(n, std::move(arcs), true, {}, std::move(costs), std::move(benefits));
}

// Directed power-law graph: node v gets expected out- and in-weight ∝ (v+1)^(-1/(a-1)),
// arcs drawn Chung-Lu style until m distinct arcs exist. No probabilities assigned.
inline Graph power_law_graph(std::size_t n, std::size_t m, double exponent, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> w(n);
  for (std::size_t v = 0; v < n; ++v) w[v] = std::pow(static_cast<double>(v + 1), -1.0 / (exponent - 1.0));
  std::vector<double> cdf(n);
  double acc = 0.0;
  for (std::size_t v = 0; v < n; ++v) cdf[v] = (acc += w[v]);
  auto draw = [&] {
    const double x = rng.uniform() * acc;
    return static_cast<NodeId>(std::min<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), x) - cdf.begin(), n - 1));
  };
  // shuffle labels so that source and target hubs differ
  std::vector<NodeId> perm(n);
  for (std::size_t v = 0; v < n; ++v) perm[v] = static_cast<NodeId>(v);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
  std::vector<Arc> arcs;
  std::unordered_set<std::uint64_t> seen;
  while (arcs.size() < m) {
    const NodeId u = draw();
    const NodeId v = perm[draw()];
    if (u == v || !seen.insert(static_cast<std::uint64_t>(u) * n + v).second) continue;
    arcs.push_back({u, v, 0.0});
  }
  return Graph::build(n, std::move(arcs), false);
}

}  // namespace ctvm::testing

#include "ctvm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "ctvm/error.hpp"
#include "ctvm/rng.hpp"

namespace ctvm {

namespace {

void check_node_attribute(std::span<const double> values, const char* name) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw DataError(std::string(name) + " of node " + std::to_string(i) + " must be finite and >= 0");
    }
  }
}

void check_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "edge probability " << p << " outside (0,1)";
    throw DataError(msg.str());
  }
}

}  // namespace

Graph Graph::build(std::size_t num_nodes, std::vector<Arc> arcs, bool weighted,
                   std::vector<std::uint64_t> external_ids, std::vector<double> costs,
                   std::vector<double> benefits) {
  if (num_nodes > std::numeric_limits<NodeId>::max()) throw DataError("too many nodes");
  Graph g;
  g.weighted_ = weighted;
  if (external_ids.empty()) {
    external_ids.resize(num_nodes);
    std::iota(external_ids.begin(), external_ids.end(), std::uint64_t{0});
  }
  if (costs.empty()) costs.assign(num_nodes, 1.0);
  if (benefits.empty()) benefits.assign(num_nodes, 1.0);
  if (external_ids.size() != num_nodes || costs.size() != num_nodes || benefits.size() != num_nodes) {
    throw DataError("node attribute arrays do not match node count");
  }
  check_node_attribute(costs, "cost");
  check_node_attribute(benefits, "benefit");

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(arcs.size() * 2);
  for (Arc& a : arcs) {
    if (a.src >= num_nodes || a.dst >= num_nodes) throw DataError("arc endpoint out of range");
    if (a.src == a.dst) throw DataError("self-loop on node " + std::to_string(external_ids[a.src]));
    if (!seen.insert((static_cast<std::uint64_t>(a.src) << 32) | a.dst).second) {
      throw DataError("duplicate edge " + std::to_string(external_ids[a.src]) + " -> " +
                      std::to_string(external_ids[a.dst]));
    }
    if (weighted) {
      check_probability(a.prob);
    } else {
      a.prob = 0.0;
    }
  }
  {
    std::unordered_set<std::uint64_t> ids(external_ids.begin(), external_ids.end());
    if (ids.size() != external_ids.size()) throw DataError("duplicate external node id");
  }

  g.arcs_ = std::move(arcs);
  g.external_ids_ = std::move(external_ids);
  g.costs_ = std::move(costs);
  g.benefits_ = std::move(benefits);
  g.index();
  return g;
}

void Graph::index() {
  const std::size_t n = costs_.size();
  in_offsets_.assign(n + 1, 0);
  out_offsets_.assign(n + 1, 0);
  for (const Arc& a : arcs_) {
    ++in_offsets_[a.dst + 1];
    ++out_offsets_[a.src + 1];
  }
  std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());
  std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
  in_adj_.resize(arcs_.size());
  out_adj_.resize(arcs_.size());
  std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  std::vector<std::size_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  // Stable placement: per-node lists keep arc insertion order.
  for (const Arc& a : arcs_) {
    in_adj_[in_fill[a.dst]++] = {a.src, a.prob};
    out_adj_[out_fill[a.src]++] = {a.dst, a.prob};
  }
}

NodeId Graph::internal_id(std::uint64_t external) const {
  // Linear scan; only used on small user-supplied seed lists.
  const auto it = std::find(external_ids_.begin(), external_ids_.end(), external);
  if (it == external_ids_.end()) throw DataError("unknown node id " + std::to_string(external));
  return static_cast<NodeId>(it - external_ids_.begin());
}

Graph Graph::with_probabilities(std::vector<double> probs) const {
  if (probs.size() != arcs_.size()) throw std::invalid_argument("probability count does not match edge count");
  Graph g = *this;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    check_probability(probs[i]);
    g.arcs_[i].prob = probs[i];
  }
  g.weighted_ = true;
  g.index();
  return g;
}

Graph Graph::with_costs(std::vector<double> costs) const {
  if (costs.size() != num_nodes()) throw std::invalid_argument("cost count does not match node count");
  check_node_attribute(costs, "cost");
  Graph g = *this;
  g.costs_ = std::move(costs);
  return g;
}

Graph Graph::with_benefits(std::vector<double> benefits) const {
  if (benefits.size() != num_nodes()) throw std::invalid_argument("benefit count does not match node count");
  check_node_attribute(benefits, "benefit");
  Graph g = *this;
  g.benefits_ = std::move(benefits);
  return g;
}

Graph load_edge_list(const std::string& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);

  std::unordered_map<std::uint64_t, NodeId> ids;
  std::vector<std::uint64_t> external;
  auto intern = [&](std::uint64_t x) {
    auto [it, inserted] = ids.try_emplace(x, static_cast<NodeId>(external.size()));
    if (inserted) external.push_back(x);
    return it->second;
  };

  std::vector<Arc> arcs;
  int with_prob = -1;  // unknown until the first edge line
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(std::move(t));
    if (tok.empty()) continue;
    if (tok.size() < 2 || tok.size() > 3) throw ParseError(path, lineno, "expected 'u v [p]'");

    auto parse_id = [&](const std::string& s) {
      std::size_t used = 0;
      unsigned long long v = 0;
      if (s.empty() || s[0] == '-' || s[0] == '+') throw ParseError(path, lineno, "bad node id '" + s + "'");
      try {
        v = std::stoull(s, &used);
      } catch (const std::exception&) {
        throw ParseError(path, lineno, "bad node id '" + s + "'");
      }
      if (used != s.size()) throw ParseError(path, lineno, "bad node id '" + s + "'");
      return static_cast<std::uint64_t>(v);
    };
    const std::uint64_t u = parse_id(tok[0]);
    const std::uint64_t v = parse_id(tok[1]);
    double p = 0.0;
    if (tok.size() == 3) {
      std::size_t used = 0;
      try {
        p = std::stod(tok[2], &used);
      } catch (const std::exception&) {
        throw ParseError(path, lineno, "bad probability '" + tok[2] + "'");
      }
      if (used != tok[2].size()) throw ParseError(path, lineno, "bad probability '" + tok[2] + "'");
      if (!(p > 0.0 && p < 1.0)) throw ParseError(path, lineno, "probability " + tok[2] + " outside (0,1)");
    }
    const int has = tok.size() == 3 ? 1 : 0;
    if (with_prob == -1) with_prob = has;
    if (with_prob != has) throw ParseError(path, lineno, "either every edge line has a probability or none does");
    if (u == v) throw ParseError(path, lineno, "self-loop on node " + tok[0]);

    const NodeId a = intern(u);
    const NodeId b = intern(v);
    arcs.push_back({a, b, p});
    if (!directed) arcs.push_back({b, a, p});
  }
  const std::size_t n = external.size();
  return Graph::build(n, std::move(arcs), with_prob == 1, std::move(external));
}

Graph assign_weights_trivalency(const Graph& g, std::uint64_t seed) {
  static constexpr double kLevels[] = {0.001, 0.01, 0.1};
  Rng rng(seed);
  std::vector<double> probs(g.num_edges());
  for (double& p : probs) p = kLevels[rng.below(3)];
  return g.with_probabilities(std::move(probs));
}

Graph assign_costs_degree(const Graph& g) {
  if (g.num_edges() == 0) throw DataError("degree-proportional costs need at least one edge");
  const double n = static_cast<double>(g.num_nodes());
  const double total = static_cast<double>(g.num_edges());
  std::vector<double> costs(g.num_nodes());
  for (NodeId u = 0; u < costs.size(); ++u) costs[u] = n * static_cast<double>(g.out_degree(u)) / total;
  return g.with_costs(std::move(costs));
}

Graph assign_costs_unit(const Graph& g) { return g.with_costs(std::vector<double>(g.num_nodes(), 1.0)); }

Graph assign_benefits_target(const Graph& g, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw std::domain_error("target fraction must be in (0,1]");
  const std::size_t n = g.num_nodes();
  const auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
  // Partial Fisher-Yates: the first k slots are a uniform k-subset.
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + rng.below(n - i);
    std::swap(order[i], order[j]);
  }
  std::vector<double> benefits(n, 0.0);
  for (std::size_t i = 0; i < k; ++i) benefits[order[i]] = 1.0;
  return g.with_benefits(std::move(benefits));
}

GraphConstants compute_constants(const Graph& g) {
  if (!g.has_probabilities()) throw DataError("edge probabilities have not been assigned");
  GraphConstants c;
  const std::size_t n = g.num_nodes();
  c.gamma.resize(n);
  c.singular_mass.resize(n);
  for (NodeId u = 0; u < n; ++u) {
    double log_none = 0.0;
    for (const Neighbor& in : g.in_neighbors(u)) log_none += std::log1p(-in.prob);
    c.gamma[u] = -std::expm1(log_none);
    const double b = g.benefit(u);
    c.singular_mass[u] = (1.0 - c.gamma[u]) * b;
    c.total_benefit += b;
    c.importance_mass += c.gamma[u] * b;
  }
  c.rho = c.total_benefit > 0.0 ? c.importance_mass / c.total_benefit : 0.0;
  return c;
}

}  // namespace ctvm

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ctvm {

using NodeId = std::uint32_t;

struct Arc {
  NodeId src;
  NodeId dst;
  double prob;
};

struct Neighbor {
  NodeId node;
  double prob;
};

/// Immutable directed graph with per-edge propagation probabilities and
/// per-node cost and benefit.
///
/// Arcs keep their insertion order. In- and out-lists are stable with respect
/// to it, so in_neighbors(v) lists v's in-neighbors in order of first appearance
/// in the source file. Importance sampling decomposes on that order.
///
/// A graph may be built without probabilities (has_probabilities() == false);
/// every prob is then 0 and must be assigned before sampling.
class Graph {
 public:
  Graph() = default;

  /// Validates and builds. Rejects self-loops, duplicate (src, dst) pairs,
  /// out-of-range endpoints and, when `weighted`, probabilities outside (0,1).
  /// Empty `external_ids` means identity ids; empty costs/benefits mean all 1.
  static Graph build(std::size_t num_nodes, std::vector<Arc> arcs, bool weighted,
                     std::vector<std::uint64_t> external_ids = {}, std::vector<double> costs = {},
                     std::vector<double> benefits = {});

  std::size_t num_nodes() const { return costs_.size(); }
  std::size_t num_edges() const { return arcs_.size(); }
  bool has_probabilities() const { return weighted_; }

  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const Neighbor> in_neighbors(NodeId v) const {
    return {in_adj_.data() + in_offsets_[v], in_adj_.data() + in_offsets_[v + 1]};
  }
  std::span<const Neighbor> out_neighbors(NodeId u) const {
    return {out_adj_.data() + out_offsets_[u], out_adj_.data() + out_offsets_[u + 1]};
  }
  std::size_t in_degree(NodeId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }
  std::size_t out_degree(NodeId u) const { return out_offsets_[u + 1] - out_offsets_[u]; }

  double cost(NodeId u) const { return costs_[u]; }
  double benefit(NodeId u) const { return benefits_[u]; }
  std::span<const double> costs() const { return costs_; }
  std::span<const double> benefits() const { return benefits_; }

  std::uint64_t external_id(NodeId u) const { return external_ids_[u]; }
  std::span<const std::uint64_t> external_ids() const { return external_ids_; }
  /// Internal id of an external id; throws DataError when unknown.
  NodeId internal_id(std::uint64_t external) const;

  /// Copies with one attribute replaced. Probabilities are indexed like arcs().
  Graph with_probabilities(std::vector<double> probs) const;
  Graph with_costs(std::vector<double> costs) const;
  Graph with_benefits(std::vector<double> benefits) const;

 private:
  void index();

  std::vector<Arc> arcs_;
  bool weighted_ = false;
  std::vector<std::uint64_t> external_ids_;
  std::vector<double> costs_;
  std::vector<double> benefits_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<Neighbor> in_adj_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<Neighbor> out_adj_;
};

/// Quantities derived from probabilities and benefits that importance sampling needs.
struct GraphConstants {
  std::vector<double> gamma;          ///< Pr[at least one in-edge of u is live]
  std::vector<double> singular_mass;  ///< (1 - gamma(u)) * b(u)
  double total_benefit = 0.0;         ///< Γ = Σ b(u)
  double importance_mass = 0.0;       ///< Φ = Σ gamma(u) b(u)
  double rho = 0.0;                   ///< Φ / Γ, 0 when Γ = 0
};

/// Reads whitespace-separated "u v [p]" lines; '#' starts a comment.
/// Either every edge line carries p or none does. Node ids are remapped to
/// 0..n-1 in order of first appearance. Undirected input yields both arcs.
Graph load_edge_list(const std::string& path, bool directed);

/// Each arc's probability drawn uniformly from {0.001, 0.01, 0.1}.
Graph assign_weights_trivalency(const Graph& g, std::uint64_t seed);

/// cost(u) = n * outdeg(u) / m. Throws on an edgeless graph.
Graph assign_costs_degree(const Graph& g);

Graph assign_costs_unit(const Graph& g);

/// floor(fraction * n) nodes chosen uniformly without replacement get benefit 1,
/// the rest 0.
Graph assign_benefits_target(const Graph& g, double fraction, std::uint64_t seed);

GraphConstants compute_constants(const Graph& g);

}  // namespace ctvm

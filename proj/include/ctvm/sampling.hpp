#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ctvm/alias_table.hpp"
#include "ctvm/graph.hpp"
#include "ctvm/rng.hpp"

namespace ctvm {

enum class SampleKind {
  plain,       ///< benefit sample: source drawn with probability b(u)/Γ
  importance,  ///< importance benefit sample: source ∝ γ(u)b(u), at least two nodes
};

struct BenefitSample {
  NodeId source = 0;
  std::vector<NodeId> nodes;  ///< source first, then discovery order
  bool importance = false;
};

/// Reusable per-worker buffers: generation-stamped visit marks and the BFS queue.
class SampleScratch {
 public:
  explicit SampleScratch(std::size_t num_nodes) : stamp_(num_nodes, 0) {}

  void next_generation() {
    if (++generation_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      generation_ = 1;
    }
  }
  bool visited(NodeId v) const { return stamp_[v] == generation_; }
  bool visit(NodeId v) {
    if (stamp_[v] == generation_) return false;
    stamp_[v] = generation_;
    return true;
  }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

/// Draws benefit samples of one kind. Sample i is a pure function of
/// (graph, master_seed, i): its random stream is derived from that pair.
///
/// Live-edge semantics throughout: each in-edge (w, v) is examined at most once
/// per sample, when v is expanded, and is live with probability p(w, v).
class SampleGenerator {
 public:
  /// Throws std::invalid_argument when the source distribution has no mass
  /// (Γ = 0 for plain, Φ = 0 for importance).
  SampleGenerator(const Graph& g, const GraphConstants& consts, SampleKind kind);

  SampleKind kind() const { return kind_; }
  const Graph& graph() const { return *graph_; }

  /// Writes the sample's nodes to `out` (cleared first), source first.
  NodeId generate(std::uint64_t master_seed, std::uint64_t index, SampleScratch& scratch,
                  std::vector<NodeId>& out) const;

  BenefitSample generate(std::uint64_t master_seed, std::uint64_t index) const;

 private:
  std::size_t pick_first_live(NodeId u, Rng& rng) const;

  const Graph* graph_;
  const GraphConstants* consts_;
  SampleKind kind_;
  AliasTable sources_;
};

/// Convenience wrappers; each builds a fresh generator.
BenefitSample gen_benefit_sample(const Graph& g, const GraphConstants& consts, std::uint64_t master_seed,
                                 std::uint64_t index);
BenefitSample gen_importance_sample(const Graph& g, const GraphConstants& consts, std::uint64_t master_seed,
                                    std::uint64_t index);

/// Append-only sample collection with an inverted node -> samples index.
class SamplePool {
 public:
  SamplePool(std::size_t num_nodes, SampleKind kind, std::uint64_t master_seed);

  std::size_t size() const { return sources_.size(); }
  bool empty() const { return sources_.empty(); }
  SampleKind kind() const { return kind_; }
  std::uint64_t master_seed() const { return master_seed_; }
  std::size_t num_nodes() const { return covering_.size(); }

  NodeId source(std::size_t i) const { return sources_[i]; }
  std::span<const NodeId> nodes(std::size_t i) const {
    return {members_.data() + offsets_[i], members_.data() + offsets_[i + 1]};
  }
  BenefitSample sample(std::size_t i) const;

  /// Indices of samples containing v, ascending.
  std::span<const std::uint32_t> samples_covering(NodeId v) const { return covering_[v]; }

  /// Σ_j |nodes(R_j)|
  std::size_t total_entries() const { return members_.size(); }

  void append(NodeId source, std::span<const NodeId> nodes);

 private:
  SampleKind kind_;
  std::uint64_t master_seed_;
  std::vector<NodeId> sources_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> members_;
  std::vector<std::vector<std::uint32_t>> covering_;
};

/// Grows `pool` to exactly `target_count` samples. Workers generate disjoint
/// index ranges; results are appended in index order, so the pool is
/// bit-identical for any `threads`.
void extend_pool(SamplePool& pool, const SampleGenerator& gen, std::size_t target_count, unsigned threads = 1);

/// One line per sample: "<source>\t<sorted node ids, space separated>".
void write_pool_dump(std::ostream& out, const SamplePool& pool);

}  // namespace ctvm

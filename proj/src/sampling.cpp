#include "ctvm/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace ctvm {

SampleGenerator::SampleGenerator(const Graph& g, const GraphConstants& consts, SampleKind kind)
    : graph_(&g), consts_(&consts), kind_(kind) {
  if (!g.has_probabilities()) throw std::invalid_argument("sampling needs edge probabilities");
  if (consts.gamma.size() != g.num_nodes()) throw std::invalid_argument("constants do not match graph");
  std::vector<double> weights(g.num_nodes());
  for (NodeId u = 0; u < weights.size(); ++u) {
    weights[u] = kind == SampleKind::importance ? consts.gamma[u] * g.benefit(u) : g.benefit(u);
  }
  const double mass = kind == SampleKind::importance ? consts.importance_mass : consts.total_benefit;
  if (!(mass > 0.0)) {
    throw std::invalid_argument(kind == SampleKind::importance
                                    ? "importance sampling needs Φ > 0 (no node has both benefit and in-edges)"
                                    : "benefit sampling needs Γ > 0 (no node carries benefit)");
  }
  sources_ = AliasTable(weights);
}

// Index i of the first live in-edge of u, conditioned on at least one being live:
// Pr[i] = p_i ∏_{j<i}(1 - p_j) / γ(u).
std::size_t SampleGenerator::pick_first_live(NodeId u, Rng& rng) const {
  const auto ins = graph_->in_neighbors(u);
  const double r = rng.uniform() * consts_->gamma[u];
  double none_before = 1.0;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < ins.size(); ++i) {
    cumulative += ins[i].prob * none_before;
    if (r < cumulative) return i;
    none_before *= 1.0 - ins[i].prob;
  }
  // r landed in the rounding gap between γ(u) and the running sum.
  return ins.size() - 1;
}

NodeId SampleGenerator::generate(std::uint64_t master_seed, std::uint64_t index, SampleScratch& scratch,
                                 std::vector<NodeId>& out) const {
  Rng rng(master_seed, index);
  scratch.next_generation();
  out.clear();

  const NodeId source = sources_.sample(rng);
  scratch.visit(source);
  out.push_back(source);
  std::size_t head = 0;

  if (kind_ == SampleKind::importance) {
    const auto ins = graph_->in_neighbors(source);
    const std::size_t first = pick_first_live(source, rng);
    scratch.visit(ins[first].node);
    out.push_back(ins[first].node);
    for (std::size_t t = first + 1; t < ins.size(); ++t) {
      if (rng.bernoulli(ins[t].prob)) {
        scratch.visit(ins[t].node);
        out.push_back(ins[t].node);
      }
    }
    // The source's in-edges are all decided; expansion resumes at its in-neighbors.
    head = 1;
  }

  for (; head < out.size(); ++head) {
    const NodeId v = out[head];
    for (const Neighbor& in : graph_->in_neighbors(v)) {
      // A failed coin leaves w unmarked: it may still be reached through another edge.
      if (!scratch.visited(in.node) && rng.bernoulli(in.prob)) {
        scratch.visit(in.node);
        out.push_back(in.node);
      }
    }
  }
  return source;
}

BenefitSample SampleGenerator::generate(std::uint64_t master_seed, std::uint64_t index) const {
  SampleScratch scratch(graph_->num_nodes());
  BenefitSample s;
  s.source = generate(master_seed, index, scratch, s.nodes);
  s.importance = kind_ == SampleKind::importance;
  return s;
}

BenefitSample gen_benefit_sample(const Graph& g, const GraphConstants& consts, std::uint64_t master_seed,
                                 std::uint64_t index) {
  return SampleGenerator(g, consts, SampleKind::plain).generate(master_seed, index);
}

BenefitSample gen_importance_sample(const Graph& g, const GraphConstants& consts, std::uint64_t master_seed,
                                    std::uint64_t index) {
  return SampleGenerator(g, consts, SampleKind::importance).generate(master_seed, index);
}

SamplePool::SamplePool(std::size_t num_nodes, SampleKind kind, std::uint64_t master_seed)
    : kind_(kind), master_seed_(master_seed), covering_(num_nodes) {}

BenefitSample SamplePool::sample(std::size_t i) const {
  const auto members = nodes(i);
  return {sources_[i], {members.begin(), members.end()}, kind_ == SampleKind::importance};
}

void SamplePool::append(NodeId source, std::span<const NodeId> nodes) {
  if (sources_.size() >= std::numeric_limits<std::uint32_t>::max()) throw std::length_error("sample pool is full");
  const auto index = static_cast<std::uint32_t>(sources_.size());
  sources_.push_back(source);
  members_.insert(members_.end(), nodes.begin(), nodes.end());
  offsets_.push_back(members_.size());
  for (NodeId v : nodes) covering_[v].push_back(index);
}

void extend_pool(SamplePool& pool, const SampleGenerator& gen, std::size_t target_count, unsigned threads) {
  if (target_count < pool.size()) throw std::invalid_argument("extend_pool cannot shrink a pool");
  if (gen.kind() != pool.kind()) throw std::invalid_argument("generator and pool sample kinds differ");
  if (gen.graph().num_nodes() != pool.num_nodes()) throw std::invalid_argument("generator and pool graphs differ");
  const std::size_t begin = pool.size();
  if (target_count == begin) return;

  struct Chunk {
    std::vector<NodeId> sources;
    std::vector<std::size_t> ends;
    std::vector<NodeId> members;
  };
  constexpr std::size_t kChunk = 2048;
  const std::size_t count = target_count - begin;
  const std::size_t num_chunks = (count + kChunk - 1) / kChunk;
  std::vector<Chunk> chunks(num_chunks);
  std::atomic<std::size_t> next{0};
  const std::uint64_t seed = pool.master_seed();

  auto worker = [&] {
    SampleScratch scratch(gen.graph().num_nodes());
    std::vector<NodeId> nodes;
    for (std::size_t c = next++; c < num_chunks; c = next++) {
      Chunk& chunk = chunks[c];
      const std::size_t lo = begin + c * kChunk;
      const std::size_t hi = std::min(target_count, lo + kChunk);
      chunk.sources.reserve(hi - lo);
      chunk.ends.reserve(hi - lo);
      for (std::size_t i = lo; i < hi; ++i) {
        chunk.sources.push_back(gen.generate(seed, i, scratch, nodes));
        chunk.members.insert(chunk.members.end(), nodes.begin(), nodes.end());
        chunk.ends.push_back(chunk.members.size());
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(num_chunks)));
  {
    std::vector<std::jthread> pool_threads;
    for (unsigned i = 1; i < workers; ++i) pool_threads.emplace_back(worker);
    worker();
  }

  for (const Chunk& chunk : chunks) {
    std::size_t start = 0;
    for (std::size_t k = 0; k < chunk.sources.size(); ++k) {
      pool.append(chunk.sources[k], std::span(chunk.members).subspan(start, chunk.ends[k] - start));
      start = chunk.ends[k];
    }
  }
}

void write_pool_dump(std::ostream& out, const SamplePool& pool) {
  std::vector<NodeId> sorted;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto nodes = pool.nodes(i);
    sorted.assign(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    out << pool.source(i) << '\t';
    for (std::size_t k = 0; k < sorted.size(); ++k) out << (k ? " " : "") << sorted[k];
    out << '\n';
  }
}

}  // namespace ctvm

#include "ctvm/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>

#include "ctvm/rng.hpp"

namespace ctvm::oracle {

namespace {

void require_enumerable(const Graph& g) {
  if (g.num_edges() > kMaxExactEdges) {
    throw std::length_error("exact oracle refuses m=" + std::to_string(g.num_edges()) + " (limit " +
                            std::to_string(kMaxExactEdges) + " edges)");
  }
  if (!g.has_probabilities()) throw std::invalid_argument("exact oracle needs edge probabilities");
}

/// Pr[live set == mask] as lo[mask & low_bits] * hi[mask >> split].
class LiveEdgeWeights {
 public:
  explicit LiveEdgeWeights(const Graph& g) {
    const auto arcs = g.arcs();
    const std::size_t m = arcs.size();
    split_ = m / 2;
    lo_ = table(arcs.subspan(0, split_));
    hi_ = table(arcs.subspan(split_));
  }

  double operator()(std::uint64_t mask) const {
    return lo_[mask & ((std::uint64_t{1} << split_) - 1)] * hi_[mask >> split_];
  }

 private:
  static std::vector<double> table(std::span<const Arc> arcs) {
    std::vector<double> t(std::size_t{1} << arcs.size());
    for (std::size_t mask = 0; mask < t.size(); ++mask) {
      double w = 1.0;
      for (std::size_t e = 0; e < arcs.size(); ++e) w *= (mask >> e & 1) ? arcs[e].prob : 1.0 - arcs[e].prob;
      t[mask] = w;
    }
    return t;
  }

  std::size_t split_ = 0;
  std::vector<double> lo_, hi_;
};

}  // namespace

double exact_benefit(const Graph& g, std::span<const NodeId> seeds) {
  require_enumerable(g);
  if (seeds.empty()) return 0.0;
  const std::size_t n = g.num_nodes();
  const auto arcs = g.arcs();
  const std::size_t m = arcs.size();

  // Out-lists carrying arc indices so the live mask can be tested directly.
  std::vector<std::vector<std::pair<NodeId, std::size_t>>> out(n);
  for (std::size_t e = 0; e < m; ++e) out[arcs[e].src].emplace_back(arcs[e].dst, e);

  const LiveEdgeWeights weight(g);
  std::vector<std::uint64_t> stamp(n, 0);
  std::vector<NodeId> queue;
  queue.reserve(n);
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const std::uint64_t mark = mask + 1;
    queue.clear();
    double reached = 0.0;
    for (NodeId s : seeds) {
      if (stamp[s] == mark) continue;
      stamp[s] = mark;
      queue.push_back(s);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId v = queue[head];
      reached += g.benefit(v);
      for (auto [w, e] : out[v]) {
        if ((mask >> e & 1) && stamp[w] != mark) {
          stamp[w] = mark;
          queue.push_back(w);
        }
      }
    }
    total += weight(mask) * reached;
  }
  return total;
}

std::vector<double> exact_benefit_all_subsets(const Graph& g) {
  require_enumerable(g);
  const std::size_t n = g.num_nodes();
  if (n > kMaxOptNodes) {
    throw std::length_error("exact oracle refuses n=" + std::to_string(n) + " (limit " +
                            std::to_string(kMaxOptNodes) + " nodes)");
  }
  const auto arcs = g.arcs();
  const std::size_t m = arcs.size();
  const LiveEdgeWeights weight(g);

  // ancestors[u]: distribution over the set of nodes that reach u.
  std::vector<std::map<std::uint32_t, double>> ancestors(n);
  std::vector<std::uint32_t> reach(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    for (std::size_t v = 0; v < n; ++v) reach[v] = 1u << v;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t e = 0; e < m; ++e) {
        if (!(mask >> e & 1)) continue;
        const std::uint32_t merged = reach[arcs[e].src] | reach[arcs[e].dst];
        if (merged != reach[arcs[e].src]) {
          reach[arcs[e].src] = merged;
          changed = true;
        }
      }
    }
    const double w = weight(mask);
    for (std::size_t u = 0; u < n; ++u) {
      std::uint32_t anc = 0;
      for (std::size_t v = 0; v < n; ++v) anc |= ((reach[v] >> u) & 1u) << v;
      ancestors[u][anc] += w;
    }
  }

  std::vector<double> value(std::size_t{1} << n, 0.0);
  for (std::uint32_t set = 1; set < value.size(); ++set) {
    double total = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (g.benefit(static_cast<NodeId>(u)) == 0.0) continue;
      double hit = 0.0;
      for (const auto& [anc, p] : ancestors[u]) {
        if (anc & set) hit += p;
      }
      total += g.benefit(static_cast<NodeId>(u)) * hit;
    }
    value[set] = total;
  }
  return value;
}

OptResult exact_opt(const Graph& g, double budget) {
  const std::vector<double> value = exact_benefit_all_subsets(g);
  const std::size_t n = g.num_nodes();

  auto members = [n](std::uint32_t set) {
    std::vector<NodeId> s;
    for (std::size_t v = 0; v < n; ++v) {
      if (set >> v & 1) s.push_back(static_cast<NodeId>(v));
    }
    return s;
  };

  OptResult best;  // empty set, always feasible
  for (std::uint32_t set = 1; set < value.size(); ++set) {
    double cost = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (set >> v & 1) cost += g.cost(static_cast<NodeId>(v));
    }
    if (cost > budget) continue;
    const double tol = 1e-12 * std::max(1.0, std::abs(best.value));
    if (value[set] > best.value + tol) {
      best = {members(set), value[set]};
    } else if (value[set] >= best.value - tol) {
      auto candidate = members(set);
      if (candidate < best.seeds) best = {std::move(candidate), value[set]};
    }
  }
  return best;
}

McEstimate monte_carlo_benefit(const Graph& g, std::span<const NodeId> seeds, std::uint64_t trials,
                               std::uint64_t seed, unsigned threads) {
  if (trials == 0) throw std::invalid_argument("monte carlo needs at least one trial");
  if (!g.has_probabilities()) throw std::invalid_argument("monte carlo needs edge probabilities");
  const std::size_t n = g.num_nodes();
  for (NodeId s : seeds) {
    if (s >= n) throw std::out_of_range("seed node out of range");
  }
  std::vector<double> values(trials);

  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    std::vector<std::uint64_t> stamp(n, 0);
    std::vector<NodeId> queue;
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      const std::uint64_t end = std::min(trials, (c + 1) * kChunk);
      for (std::uint64_t t = c * kChunk; t < end; ++t) {
        const std::uint64_t mark = t + 1;
        Rng rng(seed, t);
        queue.clear();
        for (NodeId s : seeds) {
          if (stamp[s] != mark) {
            stamp[s] = mark;
            queue.push_back(s);
          }
        }
        double active = 0.0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
          const NodeId u = queue[head];
          active += g.benefit(u);
          for (const Neighbor& out : g.out_neighbors(u)) {
            if (stamp[out.node] != mark && rng.bernoulli(out.prob)) {
              stamp[out.node] = mark;
              queue.push_back(out.node);
            }
          }
        }
        values[t] = active;
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < workers; ++i) pool.emplace_back(worker);
    worker();
  }

  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  McEstimate est;
  est.mean = mean;
  est.std_error = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials)) : 0.0;
  return est;
}

}  // namespace ctvm::oracle

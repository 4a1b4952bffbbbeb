#include "ctvm/bmc.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace ctvm {

double CoverageObjective::operator()(std::span<const NodeId> seeds) const {
  double value = 0.0;
  for (NodeId v : seeds) value += additive[v];
  if (pool == nullptr || pool->empty()) return value;
  std::vector<char> covered(pool->size(), 0);
  std::size_t count = 0;
  for (NodeId v : seeds) {
    for (std::uint32_t j : pool->samples_covering(v)) {
      if (!covered[j]) {
        covered[j] = 1;
        ++count;
      }
    }
  }
  return per_sample * static_cast<double>(count) + value;
}

CoverageObjective make_objective(const SamplePool& pool, const GraphConstants& consts) {
  CoverageObjective obj;
  obj.pool = &pool;
  const double size = static_cast<double>(pool.size());
  if (pool.kind() == SampleKind::importance) {
    obj.per_sample = pool.empty() ? 0.0 : consts.importance_mass / size;
    obj.additive = consts.singular_mass;
  } else {
    obj.per_sample = pool.empty() ? 0.0 : consts.total_benefit / size;
    obj.additive.assign(consts.gamma.size(), 0.0);
  }
  return obj;
}

CoverageObjective additive_objective(const Graph& g) {
  CoverageObjective obj;
  obj.additive.assign(g.benefits().begin(), g.benefits().end());
  return obj;
}

namespace {

struct Candidate {
  double ratio;
  double gain;
  NodeId id;
  std::size_t version;  ///< number of additions when `gain` was computed
};

// Strict "a ranks above b".
bool ranks_above(const Candidate& a, const Candidate& b) {
  if (a.ratio != b.ratio) return a.ratio > b.ratio;
  if (a.gain != b.gain) return a.gain > b.gain;
  return a.id < b.id;
}

double ratio_of(double gain, double cost) {
  if (gain <= 0.0) return 0.0;
  if (cost <= 0.0) return std::numeric_limits<double>::infinity();
  return gain / cost;
}

class GreedyState {
 public:
  GreedyState(const CoverageObjective& obj, std::span<const double> costs)
      : obj_(obj), costs_(costs), covered_(obj.pool ? obj.pool->size() : 0, 0) {}

  double gain(NodeId v) const {
    double g = obj_.additive[v];
    if (obj_.pool != nullptr && obj_.per_sample != 0.0) {
      std::size_t fresh = 0;
      for (std::uint32_t j : obj_.pool->samples_covering(v)) fresh += covered_[j] ? 0 : 1;
      g += obj_.per_sample * static_cast<double>(fresh);
    }
    return g;
  }

  Candidate evaluate(NodeId v) const {
    const double g = gain(v);
    return {ratio_of(g, costs_[v]), g, v, additions_};
  }

  void add(NodeId v, SeedSet& set) {
    if (obj_.pool != nullptr) {
      for (std::uint32_t j : obj_.pool->samples_covering(v)) covered_[j] = 1;
    }
    set.nodes.push_back(v);
    set.total_cost += costs_[v];
    ++additions_;
  }

  std::size_t additions() const { return additions_; }

 private:
  const CoverageObjective& obj_;
  std::span<const double> costs_;
  std::vector<char> covered_;
  std::size_t additions_ = 0;
};

SeedSet ratio_greedy_naive(const CoverageObjective& obj, std::span<const double> costs, double budget) {
  const std::size_t n = costs.size();
  GreedyState state(obj, costs);
  SeedSet set;
  std::vector<char> remaining(n, 1);
  for (std::size_t left = n; left > 0; --left) {
    std::optional<Candidate> best;
    for (NodeId v = 0; v < n; ++v) {
      if (!remaining[v]) continue;
      const Candidate c = state.evaluate(v);
      if (!best || ranks_above(c, *best)) best = c;
    }
    if (best->gain <= 0.0) break;
    remaining[best->id] = 0;
    if (set.total_cost + costs[best->id] <= budget) state.add(best->id, set);
  }
  return set;
}

SeedSet ratio_greedy_lazy(const CoverageObjective& obj, std::span<const double> costs, double budget) {
  const std::size_t n = costs.size();
  GreedyState state(obj, costs);
  SeedSet set;
  auto below = [](const Candidate& a, const Candidate& b) { return ranks_above(b, a); };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(below)> heap(below);
  for (NodeId v = 0; v < n; ++v) heap.push(state.evaluate(v));

  while (!heap.empty()) {
    Candidate top = heap.top();
    heap.pop();
    if (top.version != state.additions()) {
      const Candidate fresh = state.evaluate(top.id);
      // Coverage gains can only shrink as the set grows.
      if (fresh.gain > top.gain * (1.0 + 1e-12) + 1e-300) {
        throw std::logic_error("greedy marginal gain increased; objective is not submodular");
      }
      if (!heap.empty() && ranks_above(heap.top(), fresh)) {
        heap.push(fresh);
        continue;
      }
      top = fresh;
    }
    if (top.gain <= 0.0) break;
    if (set.total_cost + costs[top.id] <= budget) state.add(top.id, set);
  }
  return set;
}

}  // namespace

SeedSet iga(const CoverageObjective& objective, std::span<const double> costs, double budget, IgaOptions options) {
  if (!(budget >= 0.0)) throw std::invalid_argument("budget must be >= 0");
  if (objective.additive.size() != costs.size()) throw std::invalid_argument("objective and costs disagree on n");
  if (objective.pool != nullptr && objective.pool->num_nodes() != costs.size()) {
    throw std::invalid_argument("pool and costs disagree on n");
  }

  SeedSet greedy = options.lazy ? ratio_greedy_lazy(objective, costs, budget)
                                : ratio_greedy_naive(objective, costs, budget);
  greedy.est_benefit = objective(greedy.nodes);

  std::optional<NodeId> best_single;
  double best_value = 0.0;
  for (NodeId v = 0; v < costs.size(); ++v) {
    if (costs[v] > budget) continue;
    double value = objective.additive[v];
    if (objective.pool != nullptr) {
      value += objective.per_sample * static_cast<double>(objective.pool->samples_covering(v).size());
    }
    if (!best_single || value > best_value) {
      best_single = v;
      best_value = value;
    }
  }
  if (best_single && best_value > *greedy.est_benefit) {
    SeedSet single;
    single.nodes = {*best_single};
    single.total_cost = costs[*best_single];
    single.est_benefit = best_value;
    return single;
  }
  return greedy;
}

SeedSet iga(const SamplePool& pool, const Graph& g, const GraphConstants& consts, double budget,
            IgaOptions options) {
  return iga(make_objective(pool, consts), g.costs(), budget, options);
}

}  // namespace ctvm

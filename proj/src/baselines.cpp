#include "ctvm/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "ctvm/bounds.hpp"
#include "ctvm/rng.hpp"
#include "ctvm/sampling.hpp"

namespace ctvm {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

SeedSet fill_in_order(const Graph& g, std::span<const NodeId> order, double budget) {
  if (!(budget >= 0.0)) throw std::invalid_argument("budget must be >= 0");
  SeedSet set;
  for (NodeId v : order) {
    if (set.total_cost + g.cost(v) <= budget) {
      set.nodes.push_back(v);
      set.total_cost += g.cost(v);
    }
  }
  return set;
}

}  // namespace

std::uint64_t bct_default_sample_count(const Graph& g, const GraphConstants& consts, double budget, double eps,
                                       double delta) {
  const BoundParams params = make_bound_params(g, budget, eps, delta);
  return theorem_sample_count(eps, delta, 1.0, consts.total_benefit, params, lopt(g, budget));
}

BctResult run_bct_fixed(const Graph& g, const GraphConstants& consts, const BctConfig& cfg) {
  const std::size_t n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("empty graph");
  if (!(cfg.budget > 0.0)) throw std::domain_error("budget must be positive");
  BctResult result;
  result.delta = cfg.delta.value_or(1.0 / static_cast<double>(n));
  if (!(result.delta > 0.0 && result.delta < 0.5)) throw std::domain_error("delta must be in (0, 1/2)");
  if (!(consts.total_benefit > 0.0)) throw std::invalid_argument("no node carries benefit (Γ = 0)");
  result.lopt = lopt(g, cfg.budget);
  if (!(result.lopt > 0.0)) {
    throw std::invalid_argument("degenerate instance: no benefit-carrying node fits the budget (lOPT = 0)");
  }

  std::uint64_t count = 0;
  if (cfg.sample_count) {
    count = *cfg.sample_count;
    if (count == 0) throw std::invalid_argument("sample_count must be positive");
  } else {
    count = std::max<std::uint64_t>(1, bct_default_sample_count(g, consts, cfg.budget, cfg.eps, result.delta));
  }

  const SampleGenerator gen(g, consts, SampleKind::plain);
  SamplePool pool(n, SampleKind::plain, cfg.master_seed);
  auto start = Clock::now();
  extend_pool(pool, gen, count, cfg.threads);
  result.sampling_ms = elapsed_ms(start);
  start = Clock::now();
  result.seeds = iga(pool, g, consts, cfg.budget, {cfg.lazy_greedy});
  result.greedy_ms = elapsed_ms(start);
  result.samples_generated = pool.size();
  return result;
}

SeedSet run_random(const Graph& g, double budget, std::uint64_t seed) {
  std::vector<NodeId> order(g.num_nodes());
  std::iota(order.begin(), order.end(), NodeId{0});
  Rng rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  return fill_in_order(g, order, budget);
}

SeedSet run_degree(const Graph& g, double budget) {
  std::vector<NodeId> order(g.num_nodes());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return g.out_degree(a) > g.out_degree(b); });
  return fill_in_order(g, order, budget);
}

}  // namespace ctvm

#include "ctvm/ivm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "ctvm/bounds.hpp"
#include "ctvm/estimator.hpp"
#include "ctvm/sampling.hpp"

namespace ctvm {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

IvmResult run_ivm(const Graph& g, const GraphConstants& consts, const IvmConfig& cfg) {
  const std::size_t n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("empty graph");
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw std::domain_error("eps must be in (0,1)");
  if (!(cfg.budget > 0.0)) throw std::domain_error("budget must be positive");
  IvmResult result;
  result.delta = cfg.delta.value_or(1.0 / static_cast<double>(n));
  if (!(result.delta > 0.0 && result.delta < 0.5)) throw std::domain_error("delta must be in (0, 1/2)");
  if (!(consts.total_benefit > 0.0)) throw std::invalid_argument("no node carries benefit (Γ = 0)");

  result.lopt = lopt(g, cfg.budget);
  if (!(result.lopt > 0.0)) {
    throw std::invalid_argument("degenerate instance: no benefit-carrying node fits the budget (lOPT = 0)");
  }

  if (!(consts.importance_mass > 0.0)) {
    // Every sample would be singular: B(S) = Σ_{v∈S} b(v) exactly.
    const auto start = Clock::now();
    result.singular_fallback = true;
    result.seeds = iga(additive_objective(g), g.costs(), cfg.budget, {cfg.lazy_greedy});
    result.greedy_ms = elapsed_ms(start);
    return result;
  }

  const BoundParams params = make_bound_params(g, cfg.budget, cfg.eps, result.delta);
  result.n_max = std::max<std::uint64_t>(1, sample_bound(params, consts, result.lopt));
  if (cfg.max_pool_override) result.n_max = std::max<std::uint64_t>(1, std::min(result.n_max, *cfg.max_pool_override));
  result.n_1 = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::ceil(std::log(1.0 / result.delta) / (cfg.eps * cfg.eps))));
  const double doublings = std::ceil(std::log2(static_cast<double>(result.n_max) / static_cast<double>(result.n_1)));
  result.t_max = static_cast<std::size_t>(std::max(1.0, doublings));
  result.delta_1 = result.delta / (3.0 * static_cast<double>(result.t_max));
  const double threshold = kGreedyFactor - cfg.eps;

  const SampleGenerator gen(g, consts, SampleKind::importance);
  SamplePool pool(n, SampleKind::importance, cfg.master_seed);
  std::uint64_t planned = result.n_1;
  for (std::size_t t = 1;; ++t) {
    const std::uint64_t target = std::min(planned, result.n_max);
    auto start = Clock::now();
    extend_pool(pool, gen, target, cfg.threads);
    result.sampling_ms += elapsed_ms(start);

    start = Clock::now();
    SeedSet candidate = iga(pool, g, consts, cfg.budget, {cfg.lazy_greedy});
    result.greedy_ms += elapsed_ms(start);

    const SeedStats stats = seed_stats(candidate.nodes, consts);
    IterationTrace it;
    it.t = t;
    it.pool_size = pool.size();
    it.candidate = candidate.nodes;
    it.estimate = *candidate.est_benefit;
    it.lower = lower_bound(pool.size(), result.delta_1, it.estimate, stats, consts);
    it.upper = upper_bound(pool.size(), result.delta_1, it.estimate, stats, consts);
    it.ratio = it.upper > 0.0 ? it.lower / it.upper : 0.0;
    it.stopped = it.ratio >= threshold || pool.size() >= result.n_max;
    result.trace.push_back(std::move(it));
    if (result.trace.back().stopped) {
      result.seeds = std::move(candidate);
      break;
    }
    planned *= 2;
  }
  result.samples_generated = pool.size();
  return result;
}

}  // namespace ctvm

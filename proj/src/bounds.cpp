#include "ctvm/bounds.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ctvm {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("delta must be in (0,1)");
}

}  // namespace

double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) throw std::domain_error("log_binomial: k > n");
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0);
}

std::size_t max_feasible_cardinality(const Graph& g, double budget) {
  std::vector<double> costs(g.costs().begin(), g.costs().end());
  std::sort(costs.begin(), costs.end());
  double spent = 0.0;
  std::size_t k = 0;
  for (double c : costs) {
    if (spent + c > budget) break;
    spent += c;
    ++k;
  }
  return k;
}

BoundParams make_bound_params(const Graph& g, double budget, double eps, double delta) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("eps must be in (0,1)");
  check_delta(delta);
  BoundParams p;
  p.eps = eps;
  p.delta = delta;
  p.num_nodes = g.num_nodes();
  p.k_max = std::max<std::size_t>(1, max_feasible_cardinality(g, budget));
  p.k0 = std::min(p.k_max, std::max<std::size_t>(1, p.num_nodes / 2));
  p.k0 = std::min(p.k0, p.num_nodes);
  p.ln_m = std::log(static_cast<double>(p.k_max)) + log_binomial(p.num_nodes, p.k0);
  return p;
}

double lopt(const Graph& g, double budget) {
  if (!(budget >= 0.0)) throw std::invalid_argument("budget must be >= 0");
  std::vector<NodeId> order(g.num_nodes());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return g.benefit(a) > g.benefit(b); });
  double spent = 0.0;
  double total = 0.0;
  for (NodeId v : order) {
    if (spent + g.cost(v) <= budget) {
      spent += g.cost(v);
      total += g.benefit(v);
    }
  }
  return total;
}

double alpha(double delta) {
  check_delta(delta);
  return kGreedyFactor * std::sqrt(std::log(2.0 / delta));
}

double beta(double delta, const BoundParams& params) {
  check_delta(delta);
  return kGreedyFactor * std::sqrt(std::log(2.0 / delta) + params.ln_m);
}

std::uint64_t theorem_sample_count(double eps, double delta, double rho, double total_benefit,
                                   const BoundParams& params, double opt_lb) {
  if (!(opt_lb > 0.0)) throw std::invalid_argument("sample count needs a positive lower bound on OPT");
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("eps must be in (0,1)");
  const double s = alpha(delta) + beta(delta, params);
  const double n = std::ceil(2.0 * rho * total_benefit * s * s / (eps * eps * opt_lb));
  if (!(n < 9.0e18)) throw std::overflow_error("sample count does not fit in 64 bits");
  return static_cast<std::uint64_t>(n);
}

std::uint64_t sample_bound(const BoundParams& params, const GraphConstants& consts, double opt_lb) {
  return theorem_sample_count(params.eps, params.delta / 3.0, consts.rho, consts.total_benefit, params, opt_lb);
}

double lower_bound(std::size_t pool_size, double delta, double estimate, const SeedStats& stats,
                   const GraphConstants& consts) {
  if (pool_size == 0) throw std::invalid_argument("lower_bound needs a nonempty pool");
  if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("delta must be in (0,1]");
  const double t = static_cast<double>(pool_size);
  const double c = std::log(1.0 / delta);
  const double gamma = consts.total_benefit;
  const double rho = stats.rho;
  const double p = stats.p;
  const double first = estimate - rho * c * gamma / (3.0 * t);
  const double d = rho * c / 3.0 - c * p;
  const double second =
      estimate - gamma / t * (d + std::sqrt(d * d + 2.0 * t * p * c * std::max(estimate, 0.0) / gamma));
  return std::clamp(std::min(first, second), 0.0, std::max(estimate, 0.0));
}

double upper_bound(std::size_t pool_size, double delta, double greedy_estimate, const SeedStats& stats,
                   const GraphConstants& consts) {
  if (pool_size == 0) throw std::invalid_argument("upper_bound needs a nonempty pool");
  if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("delta must be in (0,1]");
  const double t = static_cast<double>(pool_size);
  const double c = std::log(1.0 / delta);
  const double gamma = consts.total_benefit;
  const double cp = c * stats.p;
  const double scaled = std::max(greedy_estimate, 0.0) / kGreedyFactor;
  return scaled + gamma / t * (-cp + std::sqrt(cp * cp + 2.0 * t * cp * scaled / gamma));
}

TailBounds concentration_tail(std::size_t pool_size, double lambda, double mu, const SeedStats& stats) {
  if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
  const double t = static_cast<double>(pool_size);
  const double var_term = 2.0 * stats.p * mu * t;
  const double l2 = lambda * lambda;
  const double up_den = 2.0 / 3.0 * stats.rho * lambda + var_term;
  TailBounds b;
  b.upper = up_den > 0.0 ? std::exp(-l2 / up_den) : 0.0;
  b.lower = var_term > 0.0 ? std::exp(-l2 / var_term) : 0.0;
  return b;
}

}  // namespace ctvm

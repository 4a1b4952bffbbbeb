#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "ctvm/estimator.hpp"
#include "ctvm/graph.hpp"

namespace ctvm {

/// 1 - 1/√e, the budgeted greedy's approximation factor.
inline const double kGreedyFactor = 1.0 - 1.0 / std::sqrt(std::exp(1.0));

/// Combinatorial size of the feasible-set family.
struct BoundParams {
  double eps = 0.1;
  double delta = 0.01;
  std::size_t num_nodes = 0;
  std::size_t k_max = 1;  ///< largest cardinality of any feasible seed set (at least 1)
  std::size_t k0 = 1;     ///< min(k_max, floor(n/2)), argmax of C(n, k) over k <= k_max
  double ln_m = 0.0;      ///< ln(k_max) + ln C(n, k0)
};

/// ln C(n, k) through log-gamma.
double log_binomial(std::size_t n, std::size_t k);

/// Largest k such that the k cheapest nodes fit within `budget`.
std::size_t max_feasible_cardinality(const Graph& g, double budget);

BoundParams make_bound_params(const Graph& g, double budget, double eps, double delta);

/// Benefit of a feasible set built by scanning nodes in descending benefit
/// (ties by id) and adding each one that still fits. A lower bound on OPT.
double lopt(const Graph& g, double budget);

/// (1-1/√e)·√ln(2/δ)
double alpha(double delta);

/// (1-1/√e)·√(ln(2/δ) + ln M)
double beta(double delta, const BoundParams& params);

/// Sample count 2·ρ·Γ·(α(δ)+β(δ))² / (ε²·opt_lb), rounded up. `delta` is
/// passed explicitly so callers choose δ or δ/3.
std::uint64_t theorem_sample_count(double eps, double delta, double rho, double total_benefit,
                                   const BoundParams& params, double opt_lb);

/// N_max for the importance loop: theorem_sample_count at δ/3 with ρ = Φ/Γ.
std::uint64_t sample_bound(const BoundParams& params, const GraphConstants& consts, double opt_lb);

/// Lower confidence bound on B(S) from an importance pool of `pool_size`
/// samples with estimate `estimate`. Clamped to [0, estimate].
double lower_bound(std::size_t pool_size, double delta, double estimate, const SeedStats& stats,
                   const GraphConstants& consts);

/// Upper confidence bound on OPT from the greedy candidate's estimate.
double upper_bound(std::size_t pool_size, double delta, double greedy_estimate, const SeedStats& stats,
                   const GraphConstants& consts);

struct TailBounds {
  double upper;  ///< bound on Pr[Σ Z_j - Tμ >= λ]
  double lower;  ///< bound on Pr[Σ Z_j - Tμ <= -λ]
};

/// Martingale tail bounds for a sum of T importance-sample Z values with mean μ.
TailBounds concentration_tail(std::size_t pool_size, double lambda, double mu, const SeedStats& stats);

}  // namespace ctvm

#pragma once

#include <span>
#include <vector>

#include "ctvm/graph.hpp"
#include "ctvm/sampling.hpp"

namespace ctvm {

/// Range constants of Z_j(S) for a fixed seed set S (all normalized by Γ).
struct SeedStats {
  double mu_min = 0.0;  ///< Σ_{v∈S} (1-γ(v)) b(v) / Γ
  double mu_max = 0.0;  ///< Φ/Γ + mu_min
  double rho = 0.0;     ///< mu_max - mu_min = Φ/Γ
  double p = 0.0;       ///< min{rho, (√mu_max - √mu_min)²}, a per-sample variance factor
};

SeedStats seed_stats(std::span<const NodeId> seeds, const GraphConstants& consts);

/// 1 iff `seeds` intersects the sample.
int coverage(const BenefitSample& sample, std::span<const NodeId> seeds);

/// Z_j(S) = (Φ/Γ)·Cov(R_j, S) + mu_min. Throws std::logic_error on a plain sample.
double z_value(const BenefitSample& sample, std::span<const NodeId> seeds, const GraphConstants& consts,
               const SeedStats& stats);

/// Per-sample coverage flags of `seeds` over the pool, via the inverted index.
std::vector<char> covered_flags(const SamplePool& pool, std::span<const NodeId> seeds);

std::size_t covered_count(const SamplePool& pool, std::span<const NodeId> seeds);

/// B̂(S) = (Φ/|R|)·Σ_j Cov(R_j, S) + Σ_{v∈S} (1-γ(v)) b(v) over an importance pool.
double estimate_benefit(const SamplePool& pool, std::span<const NodeId> seeds, const GraphConstants& consts);

/// B̂(S) = (Γ/|R|)·Σ_j Cov(R_j, S) over a plain benefit-sample pool.
double estimate_benefit_plain(const SamplePool& pool, std::span<const NodeId> seeds, const GraphConstants& consts);

}  // namespace ctvm

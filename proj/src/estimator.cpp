#include "ctvm/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ctvm {

namespace {

double singular_sum(std::span<const NodeId> seeds, const GraphConstants& consts) {
  double sum = 0.0;
  for (NodeId v : seeds) sum += consts.singular_mass[v];
  return sum;
}

}  // namespace

SeedStats seed_stats(std::span<const NodeId> seeds, const GraphConstants& consts) {
  SeedStats s;
  if (consts.total_benefit <= 0.0) return s;
  s.mu_min = singular_sum(seeds, consts) / consts.total_benefit;
  s.rho = consts.rho;
  s.mu_max = s.rho + s.mu_min;
  const double root_gap = std::sqrt(s.mu_max) - std::sqrt(s.mu_min);
  s.p = std::min(s.rho, root_gap * root_gap);
  return s;
}

int coverage(const BenefitSample& sample, std::span<const NodeId> seeds) {
  for (NodeId v : seeds) {
    if (std::find(sample.nodes.begin(), sample.nodes.end(), v) != sample.nodes.end()) return 1;
  }
  return 0;
}

double z_value(const BenefitSample& sample, std::span<const NodeId> seeds, const GraphConstants& consts,
               const SeedStats& stats) {
  if (!sample.importance) throw std::logic_error("z_value is defined only for importance samples");
  return consts.rho * coverage(sample, seeds) + stats.mu_min;
}

std::vector<char> covered_flags(const SamplePool& pool, std::span<const NodeId> seeds) {
  std::vector<char> covered(pool.size(), 0);
  for (NodeId v : seeds) {
    for (std::uint32_t j : pool.samples_covering(v)) covered[j] = 1;
  }
  return covered;
}

std::size_t covered_count(const SamplePool& pool, std::span<const NodeId> seeds) {
  const auto flags = covered_flags(pool, seeds);
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), char{1}));
}

double estimate_benefit(const SamplePool& pool, std::span<const NodeId> seeds, const GraphConstants& consts) {
  if (pool.kind() != SampleKind::importance) throw std::logic_error("estimate_benefit needs an importance pool");
  if (pool.empty()) throw std::invalid_argument("estimate_benefit on an empty pool");
  const double covered = static_cast<double>(covered_count(pool, seeds));
  return consts.importance_mass * covered / static_cast<double>(pool.size()) + singular_sum(seeds, consts);
}

double estimate_benefit_plain(const SamplePool& pool, std::span<const NodeId> seeds, const GraphConstants& consts) {
  if (pool.kind() != SampleKind::plain) throw std::logic_error("estimate_benefit_plain needs a plain pool");
  if (pool.empty()) throw std::invalid_argument("estimate_benefit_plain on an empty pool");
  const double covered = static_cast<double>(covered_count(pool, seeds));
  return consts.total_benefit * covered / static_cast<double>(pool.size());
}

}  // namespace ctvm

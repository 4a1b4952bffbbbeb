#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ctvm/bmc.hpp"
#include "ctvm/graph.hpp"

namespace ctvm {

struct IvmConfig {
  double eps = 0.1;
  std::optional<double> delta;  ///< defaults to 1/n
  double budget = 0.0;
  std::uint64_t master_seed = 0;
  std::optional<std::uint64_t> max_pool_override;  ///< caps N_max (testing)
  unsigned threads = 1;
  bool lazy_greedy = true;
};

struct IterationTrace {
  std::size_t t = 0;
  std::uint64_t pool_size = 0;
  std::vector<NodeId> candidate;
  double estimate = 0.0;
  double lower = 0.0;  ///< f_l at the candidate
  double upper = 0.0;  ///< f_u from the candidate's estimate
  double ratio = 0.0;  ///< lower / upper, 0 when upper is 0
  bool stopped = false;
};

struct IvmResult {
  SeedSet seeds;
  std::vector<IterationTrace> trace;
  std::uint64_t samples_generated = 0;
  double delta = 0.0;
  double lopt = 0.0;
  std::uint64_t n_max = 0;  ///< after any override
  std::uint64_t n_1 = 0;
  std::size_t t_max = 0;
  double delta_1 = 0.0;
  bool singular_fallback = false;  ///< Φ = 0: solved exactly on the additive objective
  double sampling_ms = 0.0;
  double greedy_ms = 0.0;
};

/// Importance-sample viral marketing loop: doubles an importance pool until the
/// greedy candidate's lower bound over the OPT upper bound certifies
/// (1-1/√e-ε), or the pool reaches N_max.
IvmResult run_ivm(const Graph& g, const GraphConstants& consts, const IvmConfig& cfg);

}  // namespace ctvm

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ctvm/rng.hpp"

namespace ctvm {

// Walker/Vose alias table: O(n) build, O(1) draw from a discrete distribution
// given by nonnegative weights. Zero-weight outcomes are never drawn.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::span<const double> weights);

  std::uint32_t sample(Rng& rng) const;

  std::size_t size() const { return prob_.size(); }
  bool empty() const { return prob_.empty(); }
  double total_weight() const { return total_; }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
  double total_ = 0.0;
};

}  // namespace ctvm

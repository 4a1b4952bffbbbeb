#include "ctvm/alias_table.hpp"

#include <cmath>
#include <stdexcept>

namespace ctvm {

AliasTable::AliasTable(std::span<const double> weights) {
  const std::size_t n = weights.size();
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("alias table: weights must be finite and nonnegative");
    total_ += w;
  }
  if (n == 0 || total_ <= 0.0) throw std::invalid_argument("alias table: total weight must be positive");

  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<std::uint32_t> small, large;
  small.reserve(n);
  large.reserve(n);
  const double scale = static_cast<double>(n) / total_;
  for (std::size_t i = 0; i < n; ++i) {
    prob_[i] = weights[i] * scale;
    alias_[i] = static_cast<std::uint32_t>(i);
    (prob_[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    alias_[s] = l;
    prob_[l] -= 1.0 - prob_[s];
    if (prob_[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (auto i : large) prob_[i] = 1.0;
  for (auto i : small) {
    // A zero-weight slot may only be left here through rounding; never let it be drawn.
    prob_[i] = weights[i] > 0.0 ? 1.0 : 0.0;
  }
  // Any zero-weight slot that ended up aliased to itself must redirect to a positive one.
  std::uint32_t fallback = 0;
  while (weights[fallback] <= 0.0) ++fallback;
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i] <= 0.0 && alias_[i] == i) {
      prob_[i] = 0.0;
      alias_[i] = fallback;
    }
  }
}

std::uint32_t AliasTable::sample(Rng& rng) const {
  const auto slot = static_cast<std::uint32_t>(rng.below(prob_.size()));
  return rng.uniform() < prob_[slot] ? slot : alias_[slot];
}

}  // namespace ctvm

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ctvm/estimator.hpp"
#include "ctvm/oracle.hpp"
#include "ctvm/sampling.hpp"
#include "fixtures.hpp"

using namespace ctvm;
using ctvm::testing::oracle_graphs;

namespace {

SamplePool importance_pool(const Graph& g, const GraphConstants& c, std::size_t count, std::uint64_t seed) {
  const SampleGenerator gen(g, c, SampleKind::importance);
  SamplePool pool(g.num_nodes(), SampleKind::importance, seed);
  extend_pool(pool, gen, count, 4);
  return pool;
}

}  // namespace

TEST_CASE("coverage") {
  const BenefitSample r{1, {1, 3}, true};
  CHECK(coverage(r, {}) == 0);
  const std::vector<NodeId> s3{3}, s0{0, 2}, all{0, 1, 2, 3};
  CHECK(coverage(r, s3) == 1);
  CHECK(coverage(r, s0) == 0);
  CHECK(coverage(r, all) == 1);
}

TEST_CASE("seed_stats") {
  const Graph g = oracle_graphs()[0].graph;
  const auto c = compute_constants(g);
  const SeedStats empty = seed_stats({}, c);
  CHECK(empty.mu_min == 0.0);
  CHECK(empty.mu_max == doctest::Approx(c.rho));
  CHECK(empty.p == doctest::Approx(c.rho));

  // mu_min = 0.01, mu_max = 0.41 -> p = (√0.41 - 0.1)², frozen from a 40-digit evaluation
  GraphConstants k;
  k.gamma = {0.0, 0.5};
  k.singular_mass = {1.0, 0.5};
  k.total_benefit = 100.0;
  k.importance_mass = 40.0;
  k.rho = 0.4;
  const std::vector<NodeId> s0{0};
  const SeedStats st = seed_stats(s0, k);
  CHECK(st.mu_min == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(st.mu_max == doctest::Approx(0.41).epsilon(1e-14));
  CHECK(st.rho == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(st.p == doctest::Approx(0.29193751525134302627).epsilon(1e-13));
  CHECK(st.p <= st.rho);

  for (std::uint32_t mask = 0; mask < 32; ++mask) {
    std::vector<NodeId> s;
    for (NodeId v = 0; v < 5; ++v) {
      if (mask >> v & 1u) s.push_back(v);
    }
    const SeedStats x = seed_stats(s, c);
    CHECK(x.mu_min >= 0.0);
    CHECK(x.mu_min <= x.mu_max);
    CHECK(x.mu_max <= 1.0 + x.mu_min);
    CHECK(x.p >= 0.0);
    CHECK(x.p <= x.rho + 1e-15);
    CHECK(x.p == doctest::Approx(std::pow(std::sqrt(x.mu_max) - std::sqrt(x.mu_min), 2)));
  }
}

TEST_CASE("z_value") {
  const Graph g = oracle_graphs()[1].graph;
  const auto c = compute_constants(g);
  const BenefitSample r{1, {1, 0}, true};
  const std::vector<NodeId> miss{4}, hit{0, 4};
  const SeedStats sm = seed_stats(miss, c);
  const SeedStats sh = seed_stats(hit, c);
  CHECK(z_value(r, miss, c, sm) == doctest::Approx(sm.mu_min));
  CHECK(z_value(r, hit, c, sh) == doctest::Approx(sh.mu_max));
  CHECK(z_value(r, {}, c, seed_stats({}, c)) == 0.0);
  const BenefitSample plain{1, {1, 0}, false};
  CHECK_THROWS_AS(z_value(plain, hit, c, sh), std::logic_error);
}

TEST_CASE("estimate_benefit basics") {
  const Graph g = oracle_graphs()[1].graph;  // node 4: no in-edges, b = 2
  const auto c = compute_constants(g);
  const SamplePool pool = importance_pool(g, c, 2000, 1);
  CHECK(estimate_benefit(pool, {}, c) == 0.0);
  const std::vector<NodeId> s4{4};
  const double covered = static_cast<double>(covered_count(pool, s4));
  CHECK(estimate_benefit(pool, s4, c) == doctest::Approx(c.importance_mass * covered / 2000.0 + 2.0));

  // a node no sample can contain contributes exactly its own benefit
  const Graph lone = Graph::build(3, {{0, 1, 0.5}}, true, {}, {}, {1.0, 1.0, 3.0});
  const auto lc = compute_constants(lone);
  const SamplePool lp = importance_pool(lone, lc, 500, 2);
  const std::vector<NodeId> s2{2};
  CHECK(estimate_benefit(lp, s2, lc) == 3.0);

  SamplePool empty(g.num_nodes(), SampleKind::importance, 0);
  CHECK_THROWS_AS(estimate_benefit(empty, s4, c), std::invalid_argument);
  SamplePool plain(g.num_nodes(), SampleKind::plain, 0);
  CHECK_THROWS_AS(estimate_benefit(plain, s4, c), std::logic_error);
}

TEST_CASE("coverage form equals the mean of Z; monotone in S") {
  for (const auto& [name, g] : oracle_graphs()) {
    CAPTURE(name);
    const auto c = compute_constants(g);
    const SamplePool pool = importance_pool(g, c, 3000, 5);
    const std::uint32_t full = (1u << g.num_nodes()) - 1;
    std::vector<double> est(full + 1);
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      std::vector<NodeId> s;
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (mask >> v & 1u) s.push_back(v);
      }
      est[mask] = estimate_benefit(pool, s, c);
      const SeedStats st = seed_stats(s, c);
      double zsum = 0.0;
      for (std::size_t j = 0; j < pool.size(); ++j) zsum += z_value(pool.sample(j), s, c, st);
      CHECK(est[mask] == doctest::Approx(c.total_benefit * zsum / 3000.0).epsilon(1e-9));
    }
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      for (NodeId v = 0; v < g.num_nodes(); ++v) CHECK(est[mask | (1u << v)] >= est[mask]);
    }
  }
}

TEST_CASE("estimate converges to exact_benefit at 10^6 samples") {
  const Graph g = oracle_graphs()[4].graph;
  const auto c = compute_constants(g);
  const SamplePool pool = importance_pool(g, c, 1'000'000, 12);
  for (const std::vector<NodeId>& s : {std::vector<NodeId>{0}, {1, 4}, {3}, {2, 5, 6}}) {
    const double exact = oracle::exact_benefit(g, s);
    CHECK(estimate_benefit(pool, s, c) == doctest::Approx(exact).epsilon(0.01));
  }
}

TEST_CASE("plain estimator") {
  const Graph g = oracle_graphs()[0].graph;
  const auto c = compute_constants(g);
  const SampleGenerator gen(g, c, SampleKind::plain);
  SamplePool pool(g.num_nodes(), SampleKind::plain, 3);
  extend_pool(pool, gen, 1'000'000, 4);
  const std::vector<NodeId> s{0, 3};
  CHECK(estimate_benefit_plain(pool, s, c) == doctest::Approx(oracle::exact_benefit(g, s)).epsilon(0.01));
  CHECK(estimate_benefit_plain(pool, {}, c) == 0.0);
}

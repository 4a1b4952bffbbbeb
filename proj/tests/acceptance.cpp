// Acceptance checks. Prints one PASS/FAIL line per criterion; exits nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ctvm/baselines.hpp"
#include "ctvm/bmc.hpp"
#include "ctvm/bounds.hpp"
#include "ctvm/cli.hpp"
#include "ctvm/estimator.hpp"
#include "ctvm/graph_io.hpp"
#include "ctvm/ivm.hpp"
#include "ctvm/oracle.hpp"
#include "ctvm/sampling.hpp"
#include "fixtures.hpp"
#include "tmpfile.hpp"

using namespace ctvm;
using ctvm::testing::oracle_graphs;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

unsigned workers() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

std::vector<NodeId> random_subset(std::size_t n, Rng& rng) {
  std::vector<NodeId> s;
  while (s.empty()) {
    for (NodeId v = 0; v < n; ++v) {
      if (rng.bernoulli(0.5)) s.push_back(v);
    }
  }
  return s;
}

SamplePool make_pool(const Graph& g, const GraphConstants& c, SampleKind kind, std::size_t count, std::uint64_t seed) {
  const SampleGenerator gen(g, c, kind);
  SamplePool pool(g.num_nodes(), kind, seed);
  extend_pool(pool, gen, count, workers());
  return pool;
}

// Sample variance of a 0/1 indicator with k ones out of n, times scale².
double indicator_variance(std::size_t k, std::size_t n, double scale) {
  const double q = static_cast<double>(k) / static_cast<double>(n);
  return scale * scale * q * (1.0 - q) * static_cast<double>(n) / static_cast<double>(n - 1);
}

void criterion_1() {
  const auto start = Clock::now();
  std::size_t cases = 0, inside = 0;
  double worst = 0.0;
  const auto graphs = oracle_graphs();
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph& g = graphs[gi].graph;
    const auto c = compute_constants(g);
    const auto all = oracle::exact_benefit_all_subsets(g);
    Rng pick(derive_seed(101, gi));
    for (std::size_t k = 0; k < 50; ++k) {
      const auto s = random_subset(g.num_nodes(), pick);
      const SamplePool pool = make_pool(g, c, SampleKind::importance, 100'000, derive_seed(1, gi * 1000 + k));
      const double est = estimate_benefit(pool, s, c);
      const double se = std::sqrt(indicator_variance(covered_count(pool, s), pool.size(), c.importance_mass) /
                                  static_cast<double>(pool.size()));
      std::uint32_t mask = 0;
      for (NodeId v : s) mask |= 1u << v;
      const double err = std::abs(est - all[mask]);
      ++cases;
      inside += err <= 4.0 * se + 1e-9;
      if (se > 0) worst = std::max(worst, err / se);
    }
  }
  const double secs = seconds_since(start);
  const double frac = static_cast<double>(inside) / static_cast<double>(cases);
  report(1, "estimator correctness", frac >= 0.99 && secs < 120.0,
         fmt("%zu/%zu within 4 stderr (%.1f%%), worst %.2f stderr, %zu graphs, %.1fs", inside, cases, 100.0 * frac,
             worst, graphs.size(), secs));
}

void criterion_2_and_3() {
  std::size_t comparisons = 0, inside = 0;
  std::size_t pairs = 0, reduced = 0;
  double min_ratio = 1e300;
  const auto graphs = oracle_graphs();
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph& g = graphs[gi].graph;
    const auto c = compute_constants(g);
    const auto all = oracle::exact_benefit_all_subsets(g);
    const SamplePool plain = make_pool(g, c, SampleKind::plain, 100'000, derive_seed(2, gi));
    const SamplePool imp = make_pool(g, c, SampleKind::importance, 100'000, derive_seed(3, gi));
    const double n = 100'000.0;

    // 2: the optimum seed set at budget 2 under both estimators
    const auto s = oracle::exact_opt(g, 2.0).seeds;
    std::uint32_t mask = 0;
    for (NodeId v : s) mask |= 1u << v;
    const double exact = all[mask];
    const double y_est = estimate_benefit_plain(plain, s, c);
    const double y_se = std::sqrt(indicator_variance(covered_count(plain, s), plain.size(), c.total_benefit) / n);
    const double z_est = estimate_benefit(imp, s, c);
    const double z_se = std::sqrt(indicator_variance(covered_count(imp, s), imp.size(), c.importance_mass) / n);
    comparisons += 2;
    inside += std::abs(y_est - exact) <= 3.0 * y_se + 1e-9;
    inside += std::abs(z_est - exact) <= 3.0 * z_se + 1e-9;

    // 3: every nonempty subset on the same two pools
    for (std::uint32_t m = 1; m < all.size(); ++m) {
      std::vector<NodeId> t;
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (m >> v & 1u) t.push_back(v);
      }
      // Z = (Φ/Γ)·Cov + const and Y = Cov, so Var[ΓZ] = Φ²·Var[Cov_imp], Var[ΓY] = Γ²·Var[Cov_plain]
      const double var_z = indicator_variance(covered_count(imp, t), imp.size(), c.importance_mass);
      const double var_y = indicator_variance(covered_count(plain, t), plain.size(), c.total_benefit);
      ++pairs;
      reduced += var_z <= var_y;
      if (var_z > 0) min_ratio = std::min(min_ratio, var_y / var_z);
    }
  }
  report(2, "estimator equivalence", inside == comparisons,
         fmt("%zu/%zu estimates (plain and importance, 10^5 samples) within 3 stderr of exact", inside, comparisons));
  report(3, "variance reduction", reduced == pairs,
         fmt("Var[Gamma Z] <= Var[Gamma Y] on %zu/%zu (graph, S) pairs, smallest Var[Y]/Var[Z] = %.3f", reduced, pairs,
             min_ratio));
}

void criterion_4() {
  std::size_t violations = 0;
  double worst = 1e300;
  for (std::uint64_t i = 0; i < 30; ++i) {
    Rng rng(derive_seed(4, i));
    const std::size_t n = 6 + rng.below(7);
    const Graph g = ctvm::testing::random_graph(n, n + rng.below(2 * n), derive_seed(40, i));
    const auto c = compute_constants(g);
    const std::size_t size = 20 + rng.below(181);
    const SamplePool pool = make_pool(g, c, SampleKind::importance, size, derive_seed(41, i));
    const double total = std::accumulate(g.costs().begin(), g.costs().end(), 0.0);
    const double budget = (0.1 + 0.5 * rng.uniform()) * total;
    const CoverageObjective obj = make_objective(pool, c);
    double best = 0.0;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      std::vector<NodeId> s;
      double cost = 0.0;
      for (NodeId v = 0; v < n; ++v) {
        if (m >> v & 1u) {
          s.push_back(v);
          cost += g.cost(v);
        }
      }
      if (cost <= budget) best = std::max(best, obj(s));
    }
    const SeedSet got = iga(pool, g, c, budget);
    violations += *got.est_benefit < kGreedyFactor * best - 1e-12 || got.total_cost > budget;
    if (best > 0) worst = std::min(worst, *got.est_benefit / best);
  }
  report(4, "IGA guarantee", violations == 0,
         fmt("%zu violations over 30 instances (n<=12, pool<=200); worst iga/optimum = %.4f (bound %.4f)", violations,
             worst, kGreedyFactor));
}

void criterion_5() {
  const Graph g = oracle_graphs()[4].graph;
  const auto c = compute_constants(g);
  const double budget = 2.0;
  const double delta = 0.1;
  const auto all = oracle::exact_benefit_all_subsets(g);
  const double opt = oracle::exact_opt(g, budget).value;
  std::size_t lower_ok = 0, upper_ok = 0;
  const std::size_t pools = 1000;
  for (std::size_t i = 0; i < pools; ++i) {
    const SamplePool pool = make_pool(g, c, SampleKind::importance, 1000, derive_seed(5, i));
    const SeedSet s = iga(pool, g, c, budget);
    const SeedStats stats = seed_stats(s.nodes, c);
    std::uint32_t mask = 0;
    for (NodeId v : s.nodes) mask |= 1u << v;
    lower_ok += lower_bound(pool.size(), delta, *s.est_benefit, stats, c) <= all[mask];
    upper_ok += upper_bound(pool.size(), delta, *s.est_benefit, stats, c) >= opt;
  }
  const double fl = static_cast<double>(lower_ok) / pools;
  const double fu = static_cast<double>(upper_ok) / pools;
  report(5, "bound validity", fl >= 0.87 && fu >= 0.87,
         fmt("f_l <= B(S) in %.1f%%, f_u >= OPT in %.1f%% of 1000 pools (T=1000, delta=0.1; need >= 90%% - 3%%)",
             100.0 * fl, 100.0 * fu));
}

void criterion_6() {
  const auto start = Clock::now();
  const auto graphs = oracle_graphs();
  std::size_t good = 0;
  const double budget = 2.0;
  std::vector<double> opt(graphs.size());
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) opt[gi] = oracle::exact_opt(graphs[gi].graph, budget).value;
  for (std::uint64_t run = 0; run < 100; ++run) {
    const std::size_t gi = run % graphs.size();
    const Graph& g = graphs[gi].graph;
    IvmConfig cfg;
    cfg.eps = 0.1;
    cfg.delta = 0.1;
    cfg.budget = budget;
    cfg.master_seed = derive_seed(6, run);
    cfg.threads = workers();
    const IvmResult r = run_ivm(g, compute_constants(g), cfg);
    good += oracle::exact_benefit(g, r.seeds.nodes) >= (kGreedyFactor - 0.1) * opt[gi] - 1e-12;
  }
  const double secs = seconds_since(start);
  report(6, "end-to-end ratio", good >= 90 && secs < 300.0,
         fmt("%zu/100 IVM runs reach (1-1/sqrt(e)-eps)*OPT (eps=0.1, delta=0.1, %zu instances), %.1fs", good,
             graphs.size(), secs));
}

void criterion_7() {
  const std::size_t T = 1000, replicates = 10'000;
  const std::vector<double> grid{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0};
  const auto graphs = oracle_graphs();
  std::size_t checks = 0, exceed = 0;
  double worst = 0.0;
  for (std::size_t gi : {0u, 2u, 4u}) {
    const Graph& g = graphs[gi].graph;
    const auto c = compute_constants(g);
    const auto s = oracle::exact_opt(g, 1.5).seeds;
    const SeedStats stats = seed_stats(s, c);
    const double mu = oracle::exact_benefit(g, s) / c.total_benefit;
    const double per_sample = c.importance_mass / c.total_benefit;
    const SampleGenerator gen(g, c, SampleKind::importance);
    SamplePool pool(g.num_nodes(), SampleKind::importance, derive_seed(7, gi));
    extend_pool(pool, gen, T * replicates, workers());
    const auto flags = covered_flags(pool, s);
    std::vector<double> dev(replicates);
    for (std::size_t r = 0; r < replicates; ++r) {
      std::size_t k = 0;
      for (std::size_t j = r * T; j < (r + 1) * T; ++j) k += flags[j] != 0;
      dev[r] = per_sample * static_cast<double>(k) + static_cast<double>(T) * stats.mu_min - static_cast<double>(T) * mu;
    }
    const double scale = std::sqrt(2.0 * stats.p * mu * static_cast<double>(T));
    for (double k : grid) {
      const double lambda = k * scale;
      const TailBounds b = concentration_tail(T, lambda, mu, stats);
      double up = 0.0, lo = 0.0;
      for (double d : dev) {
        up += d >= lambda;
        lo += d <= -lambda;
      }
      up /= static_cast<double>(replicates);
      lo /= static_cast<double>(replicates);
      checks += 2;
      exceed += (up > b.upper) + (lo > b.lower);
      worst = std::max({worst, b.upper > 0 ? up / b.upper : 0.0, b.lower > 0 ? lo / b.lower : 0.0});
    }
  }
  report(7, "concentration sanity", exceed == 0,
         fmt("%zu/%zu empirical tails above the analytic bound (10^4 pools of T=1000, 3 graphs, lambda grid of %zu); "
             "largest empirical/bound = %.3f",
             exceed, checks, grid.size(), worst));
}

Graph synthetic(std::size_t n, std::size_t m, std::uint64_t seed) {
  const Graph base = ctvm::testing::power_law_graph(n, m, 2.3, seed);
  return assign_costs_degree(assign_benefits_target(assign_weights_trivalency(base, derive_seed(seed, 1)), 0.2,
                                                    derive_seed(seed, 2)));
}

void criterion_8() {
  struct Row {
    std::size_t n;
    double budget;
    std::uint64_t ivm_samples, bct_samples;
    double ivm_ms, bct_ms;
  };
  std::vector<Row> rows;
  bool pass = true;
  for (const auto& [n, m] : {std::pair<std::size_t, std::size_t>{10'000, 50'000}, {50'000, 250'000}}) {
    const Graph g = synthetic(n, m, n);
    const auto c = compute_constants(g);
    for (double budget : {100.0, 1000.0}) {
      IvmConfig icfg;
      icfg.eps = 0.1;
      icfg.budget = budget;
      icfg.master_seed = 8;
      icfg.threads = workers();
      auto t = Clock::now();
      const IvmResult ivm = run_ivm(g, c, icfg);
      const double ivm_ms = seconds_since(t) * 1e3;
      BctConfig bcfg;
      bcfg.eps = 0.1;
      bcfg.budget = budget;
      bcfg.master_seed = 8;
      bcfg.threads = workers();
      t = Clock::now();
      const BctResult bct = run_bct_fixed(g, c, bcfg);
      const double bct_ms = seconds_since(t) * 1e3;
      rows.push_back({n, budget, ivm.samples_generated, bct.samples_generated, ivm_ms, bct_ms});
      pass = pass && ivm.samples_generated < bct.samples_generated && ivm_ms < bct_ms;
    }
  }
  std::string detail;
  for (const Row& r : rows) {
    detail += fmt("n=%zu B=%.0f samples %llu vs %llu, %.0f ms vs %.0f ms; ", r.n, r.budget,
                  static_cast<unsigned long long>(r.ivm_samples), static_cast<unsigned long long>(r.bct_samples),
                  r.ivm_ms, r.bct_ms);
  }
  detail += "synthetic power-law graphs (IVM vs BCT-fixed)";
  report(8, "sample-efficiency trend", pass, detail);
}

void criterion_9() {
  ctvm::testing::TempDir dir;
  const Graph g = synthetic(5000, 25'000, 9);
  save_prepared(dir.file("g"), g, PrepManifest{});
  std::size_t configs = 0, identical = 0;
  auto run = [&](const std::string& algo, const std::string& threads, const std::string& out,
                 std::vector<std::string> extra) {
    std::vector<std::string> args{"run",  "--graph", dir.file("g"), "--algo",    algo,       "--budget",
                                  "10:100:30", "--seed", "17",     "--threads", threads, "--out", dir.file(out)};
    args.insert(args.end(), extra.begin(), extra.end());
    std::ostringstream sink;
    if (cli::run(args, sink, sink) != 0) return nlohmann::json();
    std::ifstream in(dir.file(out));
    nlohmann::json doc = nlohmann::json::parse(in);
    nlohmann::json kept = nlohmann::json::array();
    for (const auto& r : doc["runs"]) kept.push_back({r["seed_set"], r["samples_generated"]});
    return kept;
  };
  for (const auto& [algo, extra] : std::vector<std::pair<std::string, std::vector<std::string>>>{
           {"ivm", {}}, {"ivm", {"--naive-greedy"}}, {"bct", {"--samples", "20000"}}, {"random", {}}, {"degree", {}}}) {
    const auto a = run(algo, "1", "a.json", extra);
    const auto b = run(algo, "1", "b.json", extra);
    const auto c = run(algo, "8", "c.json", extra);
    const auto d = run(algo, "3", "d.json", extra);
    ++configs;
    identical += !a.is_null() && a.dump() == b.dump() && a.dump() == c.dump() && a.dump() == d.dump();
  }
  report(9, "determinism", identical == configs,
         fmt("%zu/%zu run configurations give byte-identical seed sets and sample counts for --threads 1/1/8/3",
             identical, configs));
}

}  // namespace

int main() {
  const auto start = Clock::now();
  criterion_1();
  criterion_2_and_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("%d criteria failed, %.1fs total\n", failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}

#include "ctvm/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctvm/baselines.hpp"
#include "ctvm/error.hpp"
#include "ctvm/graph_io.hpp"
#include "ctvm/ivm.hpp"
#include "ctvm/oracle.hpp"
#include "ctvm/report.hpp"
#include "ctvm/rng.hpp"
#include "ctvm/sampling.hpp"

namespace ctvm::cli {

using nlohmann::json;

std::vector<double> parse_budgets(const std::string& spec) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw UsageError("bad budget '" + spec + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw UsageError("bad budget '" + spec + "'");
    return v;
  };
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() == 1) {
    const double b = number(parts[0]);
    if (!(b > 0.0)) throw UsageError("budget must be positive");
    return {b};
  }
  if (parts.size() != 3) throw UsageError("budget sweep must be a:b:step");
  const double lo = number(parts[0]);
  const double hi = number(parts[1]);
  const double step = number(parts[2]);
  if (!(lo > 0.0) || !(step > 0.0) || hi < lo) throw UsageError("budget sweep needs 0 < a <= b and step > 0");
  std::vector<double> budgets;
  for (std::size_t i = 0;; ++i) {
    const double b = lo + static_cast<double>(i) * step;
    if (b > hi + 1e-9 * step) break;
    budgets.push_back(b);
  }
  return budgets;
}

namespace {

using Clock = std::chrono::steady_clock;

// "external_id value" per line, '#' comments.
std::vector<double> read_node_values(const std::string& path, const Graph& g, const char* what) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::unordered_map<std::uint64_t, NodeId> index;
  for (NodeId u = 0; u < g.num_nodes(); ++u) index.emplace(g.external_id(u), u);
  std::vector<double> values(g.num_nodes(), std::nan(""));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::uint64_t id = 0;
    double v = 0.0;
    if (!(fields >> id)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError(path, lineno, "expected 'node value'");
    }
    std::string rest;
    if (!(fields >> v) || (fields >> rest)) throw ParseError(path, lineno, "expected 'node value'");
    const auto it = index.find(id);
    if (it == index.end()) throw ParseError(path, lineno, "unknown node " + std::to_string(id));
    values[it->second] = v;
  }
  for (NodeId u = 0; u < values.size(); ++u) {
    if (std::isnan(values[u])) throw DataError(path + ": no " + what + " for node " + std::to_string(g.external_id(u)));
  }
  return values;
}

std::vector<NodeId> to_internal(const Graph& g, const std::vector<std::uint64_t>& external) {
  std::unordered_map<std::uint64_t, NodeId> index;
  for (NodeId u = 0; u < g.num_nodes(); ++u) index.emplace(g.external_id(u), u);
  std::vector<NodeId> ids;
  for (std::uint64_t x : external) {
    const auto it = index.find(x);
    if (it == index.end()) throw DataError("unknown node id " + std::to_string(x));
    if (std::find(ids.begin(), ids.end(), it->second) == ids.end()) ids.push_back(it->second);
  }
  return ids;
}

std::vector<std::uint64_t> to_external(const Graph& g, std::span<const NodeId> ids) {
  std::vector<std::uint64_t> out;
  for (NodeId v : ids) out.push_back(g.external_id(v));
  return out;
}

std::vector<std::uint64_t> parse_id_list(const std::string& s) {
  std::vector<std::uint64_t> ids;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    try {
      ids.push_back(std::stoull(tok, &used));
    } catch (const std::exception&) {
      throw UsageError("bad node id '" + tok + "'");
    }
    if (used != tok.size()) throw UsageError("bad node id '" + tok + "'");
  }
  return ids;
}

void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_reports(const std::vector<RunReport>& runs, const std::string& json_path, const std::string& csv_path) {
  write_text(json_path, reports_document(runs).dump(2) + "\n");
  if (!csv_path.empty()) {
    std::ostringstream csv;
    write_reports_csv(csv, runs);
    write_text(csv_path, csv.str());
  }
}

// --- prepare -------------------------------------------------------------

struct PrepareArgs {
  std::string input;
  bool directed = false;
  bool undirected = false;
  std::string weights = "trivalency";
  std::string costs = "degree";
  std::string cost_file;
  std::string benefits = "target:0.2";
  std::string benefit_file;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_prepare(const PrepareArgs& a, std::ostream& out) {
  if (a.directed && a.undirected) throw UsageError("--directed and --undirected are mutually exclusive");
  if (a.costs == "file" && a.cost_file.empty()) throw UsageError("--costs file needs --cost-file");
  if (a.costs != "file" && !a.cost_file.empty()) throw UsageError("--cost-file needs --costs file");
  if (a.benefits == "file" && a.benefit_file.empty()) throw UsageError("--benefits file needs --benefit-file");
  if (a.benefits != "file" && !a.benefit_file.empty()) throw UsageError("--benefit-file needs --benefits file");

  PrepManifest m;
  m.source = a.input;
  m.directed = !a.undirected;
  m.seed = a.seed;
  Graph g = load_edge_list(a.input, m.directed);

  m.weights_scheme = a.weights;
  if (a.weights == "trivalency") {
    m.weights_seed = derive_seed(a.seed, 1);
    g = assign_weights_trivalency(g, *m.weights_seed);
  } else if (a.weights == "file") {
    if (!g.has_probabilities()) throw DataError(a.input + ": --weights file but the edge list has no probabilities");
  } else {
    throw UsageError("unknown --weights scheme '" + a.weights + "'");
  }

  m.costs_scheme = a.costs;
  if (a.costs == "degree") {
    g = assign_costs_degree(g);
  } else if (a.costs == "unit") {
    g = assign_costs_unit(g);
  } else if (a.costs == "file") {
    g = g.with_costs(read_node_values(a.cost_file, g, "cost"));
  } else {
    throw UsageError("unknown --costs scheme '" + a.costs + "'");
  }

  if (a.benefits.rfind("target:", 0) == 0) {
    const std::string frac = a.benefits.substr(7);
    std::size_t used = 0;
    double f = 0.0;
    try {
      f = std::stod(frac, &used);
    } catch (const std::exception&) {
      throw UsageError("bad target fraction '" + frac + "'");
    }
    if (used != frac.size() || !(f > 0.0 && f <= 1.0)) throw UsageError("target fraction must be in (0,1]");
    m.benefits_scheme = "target";
    m.target_fraction = f;
    m.benefits_seed = derive_seed(a.seed, 2);
    g = assign_benefits_target(g, f, *m.benefits_seed);
  } else if (a.benefits == "uniform") {
    m.benefits_scheme = "uniform";
    g = g.with_benefits(std::vector<double>(g.num_nodes(), 1.0));
  } else if (a.benefits == "file") {
    m.benefits_scheme = "file";
    g = g.with_benefits(read_node_values(a.benefit_file, g, "benefit"));
  } else {
    throw UsageError("unknown --benefits scheme '" + a.benefits + "'");
  }

  save_prepared(a.out, g, m);
  out << "prepared " << a.out << ": n=" << g.num_nodes() << " m=" << g.num_edges() << '\n';
  return kSuccess;
}

// --- run -----------------------------------------------------------------

struct RunArgs {
  std::string graph;
  std::string algo;
  std::string budget;
  double eps = 0.1;
  std::string delta = "auto";
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  std::string csv;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> max_pool;
  bool naive_greedy = false;
};

int cmd_run(const RunArgs& a, std::ostream& out) {
  static const std::vector<std::string> kAlgos = {"ivm", "bct", "random", "degree"};
  if (std::find(kAlgos.begin(), kAlgos.end(), a.algo) == kAlgos.end()) {
    throw UsageError("unknown --algo '" + a.algo + "' (expected ivm|bct|random|degree)");
  }
  if (a.samples && a.algo != "bct") throw UsageError("--samples applies to --algo bct only");
  if (a.max_pool && a.algo != "ivm") throw UsageError("--max-pool applies to --algo ivm only");
  if (a.threads == 0) throw UsageError("--threads must be >= 1");
  if (!(a.eps > 0.0 && a.eps < 1.0)) throw UsageError("--eps must be in (0,1)");
  const std::vector<double> budgets = parse_budgets(a.budget);
  std::optional<double> delta;
  if (a.delta != "auto") {
    std::size_t used = 0;
    try {
      delta = std::stod(a.delta, &used);
    } catch (const std::exception&) {
      throw UsageError("bad --delta '" + a.delta + "'");
    }
    if (used != a.delta.size()) throw UsageError("bad --delta '" + a.delta + "'");
    if (!(*delta > 0.0 && *delta < 0.5)) throw UsageError("--delta must be in (0, 1/2)");
  }

  const PreparedGraph prepared = load_prepared(a.graph);
  const Graph& g = prepared.graph;
  const GraphConstants consts = compute_constants(g);
  const double resolved_delta = delta.value_or(1.0 / static_cast<double>(g.num_nodes()));

  std::vector<RunReport> runs;
  for (double budget : budgets) {
    RunReport r;
    r.algorithm = a.algo;
    r.graph = a.graph;
    r.budget = budget;
    r.eps = a.eps;
    r.seed = a.seed;
    r.threads = a.threads;
    r.naive_greedy = a.naive_greedy;
    const auto start = Clock::now();
    SeedSet seeds;
    if (a.algo == "ivm") {
      IvmConfig cfg;
      cfg.eps = a.eps;
      cfg.delta = resolved_delta;
      cfg.budget = budget;
      cfg.master_seed = a.seed;
      cfg.max_pool_override = a.max_pool;
      cfg.threads = a.threads;
      cfg.lazy_greedy = !a.naive_greedy;
      IvmResult res = run_ivm(g, consts, cfg);
      seeds = std::move(res.seeds);
      r.delta = res.delta;
      r.max_pool_override = a.max_pool;
      r.samples_generated = res.samples_generated;
      r.sampling_ms = res.sampling_ms;
      r.greedy_ms = res.greedy_ms;
      r.schedule = IvmSchedule{res.lopt, res.n_max, res.n_1, res.t_max, res.delta_1, res.singular_fallback};
      r.trace = to_trace_rows(g, res.trace);
    } else if (a.algo == "bct") {
      BctConfig cfg;
      cfg.eps = a.eps;
      cfg.delta = resolved_delta;
      cfg.budget = budget;
      cfg.master_seed = a.seed;
      cfg.sample_count = a.samples;
      cfg.threads = a.threads;
      cfg.lazy_greedy = !a.naive_greedy;
      BctResult res = run_bct_fixed(g, consts, cfg);
      seeds = std::move(res.seeds);
      r.delta = res.delta;
      r.sample_override = a.samples;
      r.samples_generated = res.samples_generated;
      r.sampling_ms = res.sampling_ms;
      r.greedy_ms = res.greedy_ms;
    } else if (a.algo == "random") {
      seeds = run_random(g, budget, a.seed);
      r.greedy_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    } else {
      seeds = run_degree(g, budget);
      r.greedy_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    r.seed_set = to_external(g, seeds.nodes);
    r.total_cost = seeds.total_cost;
    r.est_benefit = seeds.est_benefit;
    r.peak_rss_bytes = peak_rss_bytes();
    out << a.algo << " budget=" << format_double(budget) << " |S|=" << r.seed_set.size()
        << " samples=" << r.samples_generated << '\n';
    runs.push_back(std::move(r));
  }
  write_reports(runs, a.out, a.csv);
  return kSuccess;
}

// --- eval ----------------------------------------------------------------

struct EvalArgs {
  std::string report;
  std::string graph;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  std::string csv;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  if (a.trials == 0) throw UsageError("--trials must be >= 1");
  if (a.threads == 0) throw UsageError("--threads must be >= 1");
  std::vector<RunReport> runs = parse_reports_document(read_json(a.report));
  std::optional<PreparedGraph> loaded;
  std::string loaded_from;
  for (RunReport& r : runs) {
    const std::string graph_dir = a.graph.empty() ? r.graph : a.graph;
    if (!loaded || loaded_from != graph_dir) {
      loaded = load_prepared(graph_dir);
      loaded_from = graph_dir;
    }
    const auto seeds = to_internal(loaded->graph, r.seed_set);
    const auto est = oracle::monte_carlo_benefit(loaded->graph, seeds, a.trials, a.seed, a.threads);
    r.mc_benefit = est.mean;
    r.mc_stderr = est.std_error;
    r.mc_trials = a.trials;
    r.mc_seed = a.seed;
    out << r.algorithm << " budget=" << format_double(r.budget) << " mc_benefit=" << format_double(est.mean)
        << " +- " << format_double(est.std_error) << '\n';
  }
  write_reports(runs, a.out.empty() ? a.report : a.out, a.csv);
  return kSuccess;
}

// --- oracle --------------------------------------------------------------

int cmd_oracle_benefit(const std::string& graph, const std::string& seeds, std::ostream& out) {
  const PreparedGraph p = load_prepared(graph);
  const auto ids = to_internal(p.graph, parse_id_list(seeds));
  json j;
  j["seed_set"] = to_external(p.graph, ids);
  j["benefit"] = oracle::exact_benefit(p.graph, ids);
  out << j.dump() << '\n';
  return kSuccess;
}

int cmd_oracle_opt(const std::string& graph, double budget, std::ostream& out) {
  if (!(budget >= 0.0)) throw UsageError("--budget must be >= 0");
  const PreparedGraph p = load_prepared(graph);
  const auto opt = oracle::exact_opt(p.graph, budget);
  json j;
  j["budget"] = budget;
  j["seed_set"] = to_external(p.graph, opt.seeds);
  j["benefit"] = opt.value;
  out << j.dump() << '\n';
  return kSuccess;
}

// --- sample --------------------------------------------------------------

int cmd_sample(const std::string& graph, const std::string& kind, std::uint64_t count, std::uint64_t seed,
               unsigned threads, const std::string& path, std::ostream& out) {
  SampleKind k;
  if (kind == "importance") {
    k = SampleKind::importance;
  } else if (kind == "plain") {
    k = SampleKind::plain;
  } else {
    throw UsageError("--kind must be importance or plain");
  }
  const PreparedGraph p = load_prepared(graph);
  const GraphConstants consts = compute_constants(p.graph);
  const SampleGenerator gen(p.graph, consts, k);
  SamplePool pool(p.graph.num_nodes(), k, seed);
  extend_pool(pool, gen, count, threads);
  std::ostringstream dump;
  write_pool_dump(dump, pool);
  write_text(path, dump.str());
  out << "wrote " << pool.size() << " samples to " << path << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cost-aware targeted viral marketing with importance benefit sampling", "ctvm"};
  app.require_subcommand(1);

  PrepareArgs prep;
  auto* prepare = app.add_subcommand("prepare", "Assign weights, costs and benefits to an edge list");
  prepare->add_option("--input", prep.input, "Edge list: 'u v [p]' per line")->required();
  prepare->add_flag("--directed", prep.directed, "Input arcs are directed (default)");
  prepare->add_flag("--undirected", prep.undirected, "Each input line yields both arcs");
  prepare->add_option("--weights", prep.weights, "trivalency|file")->capture_default_str();
  prepare->add_option("--costs", prep.costs, "degree|unit|file")->capture_default_str();
  prepare->add_option("--cost-file", prep.cost_file, "'node cost' lines for --costs file");
  prepare->add_option("--benefits", prep.benefits, "target:<fraction>|uniform|file")->capture_default_str();
  prepare->add_option("--benefit-file", prep.benefit_file, "'node benefit' lines for --benefits file");
  prepare->add_option("--seed", prep.seed, "Master seed")->capture_default_str();
  prepare->add_option("--out", prep.out, "Output directory")->required();

  RunArgs runa;
  auto* runc = app.add_subcommand("run", "Select seed sets for one budget or a sweep");
  runc->add_option("--graph", runa.graph, "Prepared graph directory")->required();
  runc->add_option("--algo", runa.algo, "ivm|bct|random|degree")->required();
  runc->add_option("--budget", runa.budget, "Budget or sweep a:b:step")->required();
  runc->add_option("--eps", runa.eps, "Accuracy")->capture_default_str();
  runc->add_option("--delta", runa.delta, "Failure probability or 'auto' (1/n)")->capture_default_str();
  runc->add_option("--seed", runa.seed, "Master seed")->capture_default_str();
  runc->add_option("--threads", runa.threads, "Sampling workers")->capture_default_str();
  runc->add_option("--out", runa.out, "JSON report path")->required();
  runc->add_option("--csv", runa.csv, "Also write a CSV summary");
  runc->add_option("--samples", runa.samples, "Fixed sample count (bct)");
  runc->add_option("--max-pool", runa.max_pool, "Cap on the pool size (ivm)");
  runc->add_flag("--naive-greedy", runa.naive_greedy, "Full rescan instead of lazy greedy");

  EvalArgs evala;
  auto* eval = app.add_subcommand("eval", "Monte Carlo benefit of the seed sets in a report");
  eval->add_option("--report", evala.report, "JSON report from `run`")->required();
  eval->add_option("--graph", evala.graph, "Prepared graph (defaults to the one named in the report)");
  eval->add_option("--trials", evala.trials, "Forward simulations per seed set")->capture_default_str();
  eval->add_option("--seed", evala.seed, "Simulation seed")->capture_default_str();
  eval->add_option("--threads", evala.threads, "Simulation workers")->capture_default_str();
  eval->add_option("--out", evala.out, "Output report (defaults to rewriting --report)");
  eval->add_option("--csv", evala.csv, "Also write a CSV summary");

  std::string oracle_graph, oracle_seeds;
  double oracle_budget = 0.0;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact values on tiny graphs");
  oracle_cmd->require_subcommand(1);
  auto* ob = oracle_cmd->add_subcommand("benefit", "Exact expected benefit of a seed set");
  ob->add_option("--graph", oracle_graph, "Prepared graph directory")->required();
  ob->add_option("--seeds", oracle_seeds, "Comma-separated node ids")->required();
  auto* oo = oracle_cmd->add_subcommand("opt", "Exact optimum within a budget");
  oo->add_option("--graph", oracle_graph, "Prepared graph directory")->required();
  oo->add_option("--budget", oracle_budget, "Budget")->required();

  std::string sample_graph, sample_kind = "importance", sample_out;
  std::uint64_t sample_count = 0, sample_seed = 0;
  unsigned sample_threads = 1;
  auto* sample = app.add_subcommand("sample", "Dump a sample pool (one sample per line)");
  sample->add_option("--graph", sample_graph, "Prepared graph directory")->required();
  sample->add_option("--kind", sample_kind, "importance|plain")->capture_default_str();
  sample->add_option("--count", sample_count, "Number of samples")->required();
  sample->add_option("--seed", sample_seed, "Master seed")->capture_default_str();
  sample->add_option("--threads", sample_threads, "Workers")->capture_default_str();
  sample->add_option("--out", sample_out, "Output path")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*prepare) return cmd_prepare(prep, out);
    if (*runc) return cmd_run(runa, out);
    if (*eval) return cmd_eval(evala, out);
    if (*ob) return cmd_oracle_benefit(oracle_graph, oracle_seeds, out);
    if (*oo) return cmd_oracle_opt(oracle_graph, oracle_budget, out);
    if (*sample) {
      if (sample_threads == 0) throw UsageError("--threads must be >= 1");
      return cmd_sample(sample_graph, sample_kind, sample_count, sample_seed, sample_threads, sample_out, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace ctvm::cli

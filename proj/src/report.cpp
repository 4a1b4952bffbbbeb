#include "ctvm/report.hpp"

#include <sys/resource.h>

#include <ostream>

#include "ctvm/error.hpp"
#include "ctvm/graph_io.hpp"

namespace ctvm {

using nlohmann::json;

namespace {

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> get_optional(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<T>();
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "algorithm",    "graph",       "budget",    "eps",        "delta",     "seed",      "threads",
      "seed_set",     "total_cost",  "est_benefit", "samples_generated", "mc_benefit", "mc_stderr",
      "mc_trials",    "mc_seed",     "wall_ms",   "sampling_ms", "greedy_ms", "peak_rss_bytes"};
  return cols;
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + csv_cell(v[i]);
    return s;
  }
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

}  // namespace

json to_json(const RunReport& r) {
  json j;
  j["algorithm"] = r.algorithm;
  j["graph"] = r.graph;
  j["budget"] = r.budget;
  j["eps"] = r.eps;
  put_optional(j, "delta", r.delta);
  j["seed"] = r.seed;
  j["threads"] = r.threads;
  put_optional(j, "sample_override", r.sample_override);
  put_optional(j, "max_pool_override", r.max_pool_override);
  j["naive_greedy"] = r.naive_greedy;
  j["seed_set"] = r.seed_set;
  j["total_cost"] = r.total_cost;
  put_optional(j, "est_benefit", r.est_benefit);
  j["samples_generated"] = r.samples_generated;
  put_optional(j, "mc_benefit", r.mc_benefit);
  put_optional(j, "mc_stderr", r.mc_stderr);
  put_optional(j, "mc_trials", r.mc_trials);
  put_optional(j, "mc_seed", r.mc_seed);
  j["wall_ms"] = r.wall_ms;
  j["sampling_ms"] = r.sampling_ms;
  j["greedy_ms"] = r.greedy_ms;
  put_optional(j, "peak_rss_bytes", r.peak_rss_bytes);
  if (r.schedule) {
    const IvmSchedule& s = *r.schedule;
    j["schedule"] = {{"lopt", s.lopt},   {"n_max", s.n_max},     {"n_1", s.n_1},
                     {"t_max", s.t_max}, {"delta_1", s.delta_1}, {"singular_fallback", s.singular_fallback}};
    json rows = json::array();
    for (const TraceRow& t : r.trace) {
      rows.push_back({{"t", t.t},
                      {"pool_size", t.pool_size},
                      {"candidate", t.candidate},
                      {"estimate", t.estimate},
                      {"lower", t.lower},
                      {"upper", t.upper},
                      {"ratio", t.ratio},
                      {"stopped", t.stopped}});
    }
    j["trace"] = std::move(rows);
  }
  return j;
}

RunReport run_report_from_json(const json& j) {
  RunReport r;
  try {
    r.algorithm = j.at("algorithm").get<std::string>();
    r.graph = j.at("graph").get<std::string>();
    r.budget = j.at("budget").get<double>();
    r.eps = j.at("eps").get<double>();
    r.delta = get_optional<double>(j, "delta");
    r.seed = j.at("seed").get<std::uint64_t>();
    r.threads = j.value("threads", 1u);
    r.sample_override = get_optional<std::uint64_t>(j, "sample_override");
    r.max_pool_override = get_optional<std::uint64_t>(j, "max_pool_override");
    r.naive_greedy = j.value("naive_greedy", false);
    if (!j.contains("seed_set") || !j["seed_set"].is_array()) throw DataError("run report has no seed_set");
    r.seed_set = j["seed_set"].get<std::vector<std::uint64_t>>();
    r.total_cost = j.value("total_cost", 0.0);
    r.est_benefit = get_optional<double>(j, "est_benefit");
    r.samples_generated = j.value("samples_generated", std::uint64_t{0});
    r.mc_benefit = get_optional<double>(j, "mc_benefit");
    r.mc_stderr = get_optional<double>(j, "mc_stderr");
    r.mc_trials = get_optional<std::uint64_t>(j, "mc_trials");
    r.mc_seed = get_optional<std::uint64_t>(j, "mc_seed");
    r.wall_ms = j.value("wall_ms", 0.0);
    r.sampling_ms = j.value("sampling_ms", 0.0);
    r.greedy_ms = j.value("greedy_ms", 0.0);
    r.peak_rss_bytes = get_optional<std::uint64_t>(j, "peak_rss_bytes");
    if (j.contains("schedule")) {
      const json& s = j["schedule"];
      r.schedule = IvmSchedule{s.at("lopt").get<double>(),         s.at("n_max").get<std::uint64_t>(),
                               s.at("n_1").get<std::uint64_t>(),   s.at("t_max").get<std::size_t>(),
                               s.at("delta_1").get<double>(),      s.at("singular_fallback").get<bool>()};
      for (const json& t : j.value("trace", json::array())) {
        r.trace.push_back({t.at("t").get<std::size_t>(), t.at("pool_size").get<std::uint64_t>(),
                           t.at("candidate").get<std::vector<std::uint64_t>>(), t.at("estimate").get<double>(),
                           t.at("lower").get<double>(), t.at("upper").get<double>(), t.at("ratio").get<double>(),
                           t.at("stopped").get<bool>()});
      }
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed run report: ") + e.what());
  }
  return r;
}

json reports_document(const std::vector<RunReport>& runs) {
  json doc;
  doc["schema"] = kReportSchema;
  doc["version"] = kReportVersion;
  doc["peak_rss_note"] = "best-effort process peak, includes graph storage";
  doc["runs"] = json::array();
  for (const RunReport& r : runs) doc["runs"].push_back(to_json(r));
  return doc;
}

std::vector<RunReport> parse_reports_document(const json& doc) {
  if (!doc.is_object() || doc.value("schema", "") != kReportSchema) throw DataError("not a run report document");
  if (doc.value("version", 0) != kReportVersion) throw DataError("unsupported run report version");
  if (!doc.contains("runs") || !doc["runs"].is_array()) throw DataError("run report document has no runs");
  std::vector<RunReport> runs;
  for (const json& j : doc["runs"]) runs.push_back(run_report_from_json(j));
  return runs;
}

void write_reports_csv(std::ostream& out, const std::vector<RunReport>& runs) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const RunReport& r : runs) {
    const json j = to_json(r);
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_cell(j.at(cols[i]));
    out << '\n';
  }
}

bool is_timing_field(const std::string& key) {
  return key == "wall_ms" || key == "sampling_ms" || key == "greedy_ms" || key == "peak_rss_bytes";
}

std::optional<std::uint64_t> peak_rss_bytes() {
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return std::nullopt;
  return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;  // Linux reports KiB
}

std::vector<TraceRow> to_trace_rows(const Graph& g, const std::vector<IterationTrace>& trace) {
  std::vector<TraceRow> rows;
  for (const IterationTrace& it : trace) {
    TraceRow row;
    row.t = it.t;
    row.pool_size = it.pool_size;
    for (NodeId v : it.candidate) row.candidate.push_back(g.external_id(v));
    row.estimate = it.estimate;
    row.lower = it.lower;
    row.upper = it.upper;
    row.ratio = it.ratio;
    row.stopped = it.stopped;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ctvm

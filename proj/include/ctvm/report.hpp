#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctvm/graph.hpp"
#include "ctvm/ivm.hpp"

namespace ctvm {

inline constexpr const char* kReportSchema = "ctvm-run-report";
inline constexpr int kReportVersion = 1;

struct TraceRow {
  std::size_t t = 0;
  std::uint64_t pool_size = 0;
  std::vector<std::uint64_t> candidate;  ///< external ids
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double ratio = 0.0;
  bool stopped = false;
};

/// IVM-only quantities fixed before the loop starts.
struct IvmSchedule {
  double lopt = 0.0;
  std::uint64_t n_max = 0;
  std::uint64_t n_1 = 0;
  std::size_t t_max = 0;
  double delta_1 = 0.0;
  bool singular_fallback = false;
};

/// One algorithm run at one budget. Carries every parameter and seed needed to
/// regenerate its seed set.
struct RunReport {
  std::string algorithm;
  std::string graph;
  double budget = 0.0;
  double eps = 0.0;
  std::optional<double> delta;  ///< absent for random/degree
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::optional<std::uint64_t> sample_override;
  std::optional<std::uint64_t> max_pool_override;
  bool naive_greedy = false;

  std::vector<std::uint64_t> seed_set;  ///< external ids, selection order
  double total_cost = 0.0;
  std::optional<double> est_benefit;
  std::uint64_t samples_generated = 0;

  std::optional<double> mc_benefit;
  std::optional<double> mc_stderr;
  std::optional<std::uint64_t> mc_trials;
  std::optional<std::uint64_t> mc_seed;

  double wall_ms = 0.0;
  double sampling_ms = 0.0;
  double greedy_ms = 0.0;
  std::optional<std::uint64_t> peak_rss_bytes;

  std::optional<IvmSchedule> schedule;
  std::vector<TraceRow> trace;
};

nlohmann::json to_json(const RunReport& r);
RunReport run_report_from_json(const nlohmann::json& j);

/// {"schema", "version", "runs": [...]}
nlohmann::json reports_document(const std::vector<RunReport>& runs);
std::vector<RunReport> parse_reports_document(const nlohmann::json& doc);

/// Flat summary: one header line, one row per run. Column names match the JSON
/// keys; seed_set is space-separated external ids; absent values are empty cells.
void write_reports_csv(std::ostream& out, const std::vector<RunReport>& runs);

/// Fields that legitimately differ between identical invocations.
bool is_timing_field(const std::string& key);

/// Peak resident set size of this process, when the platform reports it.
std::optional<std::uint64_t> peak_rss_bytes();

std::vector<TraceRow> to_trace_rows(const Graph& g, const std::vector<IterationTrace>& trace);

}  // namespace ctvm

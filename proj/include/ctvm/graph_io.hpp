#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ctvm/graph.hpp"

namespace ctvm {

/// Provenance stored next to a prepared graph. See docs/FORMATS.md.
struct PrepManifest {
  std::string source;  ///< input edge-list path as given
  bool directed = true;
  std::uint64_t seed = 0;  ///< master seed passed to `prepare`
  std::string weights_scheme = "file";
  std::optional<std::uint64_t> weights_seed;
  std::string costs_scheme = "unit";
  std::string benefits_scheme = "uniform";
  std::optional<double> target_fraction;
  std::optional<std::uint64_t> benefits_seed;
};

struct PreparedGraph {
  Graph graph;
  PrepManifest manifest;
};

inline constexpr int kPreparedFormatVersion = 1;

/// Writes edges.tsv, nodes.tsv and manifest.json into `dir` (created if missing).
void save_prepared(const std::string& dir, const Graph& g, const PrepManifest& manifest);

PreparedGraph load_prepared(const std::string& dir);

/// %.17g, the shortest printf form guaranteed to round-trip a double.
std::string format_double(double x);

}  // namespace ctvm

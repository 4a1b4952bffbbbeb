#include "ctvm/graph_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ctvm/error.hpp"

namespace ctvm {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

constexpr const char* kEdgesHeader = "src\tdst\tp";
constexpr const char* kNodesHeader = "id\texternal_id\tcost\tbenefit";

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

double parse_double(const std::string& path, std::size_t lineno, const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw ParseError(path, lineno, "bad number '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& path, std::size_t lineno, const std::string& s) {
  char* end = nullptr;
  if (s.empty() || s[0] == '-') throw ParseError(path, lineno, "bad integer '" + s + "'");
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size()) throw ParseError(path, lineno, "bad integer '" + s + "'");
  return v;
}

}  // namespace

void save_prepared(const std::string& dir, const Graph& g, const PrepManifest& m) {
  if (!g.has_probabilities()) throw DataError("cannot save a graph without edge probabilities");
  fs::create_directories(dir);
  const fs::path root(dir);
  {
    std::ofstream out(root / "edges.tsv", std::ios::binary);
    if (!out) throw DataError("cannot write " + (root / "edges.tsv").string());
    out << kEdgesHeader << '\n';
    for (const Arc& a : g.arcs()) out << a.src << '\t' << a.dst << '\t' << format_double(a.prob) << '\n';
  }
  {
    std::ofstream out(root / "nodes.tsv", std::ios::binary);
    if (!out) throw DataError("cannot write " + (root / "nodes.tsv").string());
    out << kNodesHeader << '\n';
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      out << u << '\t' << g.external_id(u) << '\t' << format_double(g.cost(u)) << '\t'
          << format_double(g.benefit(u)) << '\n';
    }
  }
  json j;
  j["format"] = "ctvm-prepared-graph";
  j["version"] = kPreparedFormatVersion;
  j["num_nodes"] = g.num_nodes();
  j["num_edges"] = g.num_edges();
  j["source"] = m.source;
  j["directed"] = m.directed;
  j["seed"] = m.seed;
  j["weights"] = {{"scheme", m.weights_scheme}};
  if (m.weights_seed) j["weights"]["seed"] = *m.weights_seed;
  j["costs"] = {{"scheme", m.costs_scheme}};
  j["benefits"] = {{"scheme", m.benefits_scheme}};
  if (m.target_fraction) j["benefits"]["fraction"] = *m.target_fraction;
  if (m.benefits_seed) j["benefits"]["seed"] = *m.benefits_seed;
  std::ofstream out(root / "manifest.json", std::ios::binary);
  if (!out) throw DataError("cannot write " + (root / "manifest.json").string());
  out << j.dump(2) << '\n';
}

PreparedGraph load_prepared(const std::string& dir) {
  const fs::path root(dir);
  PreparedGraph result;
  json j;
  {
    const auto path = (root / "manifest.json").string();
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw DataError(path + ": " + e.what());
    }
    if (j.value("format", "") != "ctvm-prepared-graph") throw DataError(path + ": not a prepared graph manifest");
    if (j.value("version", 0) != kPreparedFormatVersion) throw DataError(path + ": unsupported version");
  }
  PrepManifest& m = result.manifest;
  std::size_t n = 0;
  std::size_t expected_m = 0;
  try {
    n = j.at("num_nodes").get<std::size_t>();
    expected_m = j.at("num_edges").get<std::size_t>();
    m.source = j.at("source").get<std::string>();
    m.directed = j.at("directed").get<bool>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.weights_scheme = j.at("weights").at("scheme").get<std::string>();
    if (j["weights"].contains("seed")) m.weights_seed = j["weights"]["seed"].get<std::uint64_t>();
    m.costs_scheme = j.at("costs").at("scheme").get<std::string>();
    m.benefits_scheme = j.at("benefits").at("scheme").get<std::string>();
    if (j["benefits"].contains("fraction")) m.target_fraction = j["benefits"]["fraction"].get<double>();
    if (j["benefits"].contains("seed")) m.benefits_seed = j["benefits"]["seed"].get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw DataError("manifest.json: " + std::string(e.what()));
  }

  std::vector<std::uint64_t> external(n);
  std::vector<double> costs(n), benefits(n);
  {
    const auto path = (root / "nodes.tsv").string();
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line) || line != kNodesHeader) throw ParseError(path, 1, "missing header");
    std::size_t count = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const auto f = split_tabs(line);
      if (f.size() != 4) throw ParseError(path, lineno, "expected 4 columns");
      const auto id = parse_u64(path, lineno, f[0]);
      if (id != count || id >= n) throw ParseError(path, lineno, "node ids must be 0..n-1 in order");
      external[id] = parse_u64(path, lineno, f[1]);
      costs[id] = parse_double(path, lineno, f[2]);
      benefits[id] = parse_double(path, lineno, f[3]);
      ++count;
    }
    if (count != n) throw DataError(path + ": expected " + std::to_string(n) + " nodes");
  }
  std::vector<Arc> arcs;
  arcs.reserve(expected_m);
  {
    const auto path = (root / "edges.tsv").string();
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line) || line != kEdgesHeader) throw ParseError(path, 1, "missing header");
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const auto f = split_tabs(line);
      if (f.size() != 3) throw ParseError(path, lineno, "expected 3 columns");
      const auto s = parse_u64(path, lineno, f[0]);
      const auto d = parse_u64(path, lineno, f[1]);
      if (s >= n || d >= n) throw ParseError(path, lineno, "node id out of range");
      arcs.push_back({static_cast<NodeId>(s), static_cast<NodeId>(d), parse_double(path, lineno, f[2])});
    }
    if (arcs.size() != expected_m) throw DataError(path + ": expected " + std::to_string(expected_m) + " edges");
  }
  result.graph = Graph::build(n, std::move(arcs), true, std::move(external), std::move(costs), std::move(benefits));
  return result;
}

}  // namespace ctvm

#include "arborist/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace arborist::io {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& msg) { throw_error(Errc::parse_error, msg); }

double require_number(const json& j, const char* key, std::size_t index) {
  if (!j.contains(key) || !j[key].is_number())
    parse_fail("edges[" + std::to_string(index) + "]: missing numeric field \"" + key + "\"");
  return j[key].get<double>();
}

NodeId require_node(const json& j, const char* key, std::size_t index) {
  if (!j.contains(key) || !j[key].is_number_integer())
    parse_fail("edges[" + std::to_string(index) + "]: field \"" + key + "\" must be an integer");
  const auto v = j[key].get<std::int64_t>();
  if (v < 0 || v > (1 << 24))
    parse_fail("edges[" + std::to_string(index) + "]: node id out of range");
  return static_cast<NodeId>(v);
}

}  // namespace

Format format_from_name(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "tsv") return Format::tsv;
  if (name.empty() || name == "auto") return Format::auto_detect;
  parse_fail("unknown format \"" + name + "\" (expected json or tsv)");
}

Graph parse_json_graph(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("num_nodes") || !doc["num_nodes"].is_number_integer())
    parse_fail("expected an object with integer \"num_nodes\"");
  const auto node_count = doc["num_nodes"].get<std::int64_t>();
  if (node_count < 1 || node_count > (1 << 24)) parse_fail("num_nodes out of range");
  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) parse_fail("\"edges\" must be an array");
    edges.reserve(doc["edges"].size());
    for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
      const json& e = doc["edges"][i];
      if (!e.is_object()) parse_fail("edges[" + std::to_string(i) + "]: expected an object");
      const NodeId u = require_node(e, "u", i);
      const NodeId v = require_node(e, "v", i);
      const double w = require_number(e, "w", i);
      edges.push_back(Edge{u, v, w});
    }
  }
  return Graph::build(static_cast<NodeId>(node_count), edges);
}

Graph parse_tsv_graph(const std::string& text) {
  std::vector<Edge> edges;
  NodeId max_id = 0;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::int64_t u = 0, v = 0;
    double w = 0.0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    auto eat_tab = [&]() {
      if (p >= end || *p != '\t') parse_fail("line " + std::to_string(line_no) + ": expected tab");
      ++p;
    };
    auto r1 = std::from_chars(p, end, u);
    if (r1.ec != std::errc{}) parse_fail("line " + std::to_string(line_no) + ": bad tail id");
    p = r1.ptr;
    eat_tab();
    auto r2 = std::from_chars(p, end, v);
    if (r2.ec != std::errc{}) parse_fail("line " + std::to_string(line_no) + ": bad head id");
    p = r2.ptr;
    eat_tab();
    auto r3 = std::from_chars(p, end, w);
    if (r3.ec != std::errc{} || r3.ptr != end)
      parse_fail("line " + std::to_string(line_no) + ": bad weight");
    if (u < 0 || v < 0 || u > (1 << 24) || v > (1 << 24))
      parse_fail("line " + std::to_string(line_no) + ": node id out of range");
    edges.push_back(Edge{static_cast<NodeId>(u), static_cast<NodeId>(v), w});
    max_id = std::max({max_id, static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  return Graph::build(max_id + 1, edges);
}

Graph read_graph_file(const std::string& path, Format format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Format f = format;
  if (f == Format::auto_detect)
    f = path.size() >= 4 && path.substr(path.size() - 4) == ".tsv" ? Format::tsv : Format::json;
  return f == Format::tsv ? parse_tsv_graph(buf.str()) : parse_json_graph(buf.str());
}

std::string format_weight(double w) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), w);
  return std::string(buf, res.ptr);
}

std::string graph_to_json(const Graph& g) {
  std::string out = "{\"num_nodes\": " + std::to_string(g.node_count()) + ", \"edges\": [";
  for (EdgeId id = 0; id < g.base_edge_count(); ++id) {
    const Edge& e = g.base_edge(id);
    if (id > 0) out += ", ";
    out += "{\"u\": " + std::to_string(e.tail) + ", \"v\": " + std::to_string(e.head) +
           ", \"w\": " + format_weight(e.weight) + "}";
  }
  out += "]}\n";
  return out;
}

std::string graph_to_tsv(const Graph& g) {
  std::string out;
  for (EdgeId id = 0; id < g.base_edge_count(); ++id) {
    const Edge& e = g.base_edge(id);
    out += std::to_string(e.tail) + "\t" + std::to_string(e.head) + "\t" +
           format_weight(e.weight) + "\n";
  }
  return out;
}

std::string tree_record(std::int64_t k, const Arborescence& d, std::int32_t node_count) {
  std::string out = "{\"k\": " + std::to_string(k) +
                    ", \"weight\": " + format_weight(d.weight) + ", \"parent\": [null";
  std::vector<NodeId> parent(static_cast<std::size_t>(node_count), -1);
  for (std::size_t i = 0; i < d.nodes.size(); ++i) parent[d.nodes[i]] = d.parent[i];
  for (std::int32_t v = 1; v < node_count; ++v) {
    out += ", ";
    out += parent[v] < 0 ? "null" : std::to_string(parent[v]);
  }
  out += "]}\n";
  return out;
}

Graph random_dense_graph(std::int32_t n, std::uint64_t seed) {
  if (n < 1) throw_error(Errc::invalid_argument, "generator needs n >= 1");
  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> used;
  auto draw_distinct = [&]() {
    for (;;) {
      const std::uint64_t x = rng() % 1000000000ULL + 1;  // 1 .. 1e9
      if (used.insert(x).second) return static_cast<double>(x);
    }
  };
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n + 1) * n);
  for (NodeId tail = 0; tail <= n; ++tail)
    for (NodeId head = 1; head <= n; ++head)
      if (tail != head) edges.push_back(Edge{tail, head, draw_distinct()});
  return Graph::build(n + 1, edges);
}

namespace {

int log_level_from_env() {
  const char* env = std::getenv("ARBORIST_LOG");
  if (env == nullptr) return 0;
  const std::string v(env);
  if (v == "debug" || v == "2") return 2;
  if (v == "info" || v == "1") return 1;
  return 0;
}

const int g_log_level = log_level_from_env();

}  // namespace

bool log_enabled(int level) { return g_log_level >= level; }

void log_line(int level, const std::string& msg) {
  if (log_enabled(level)) std::cerr << "[arborist] " << msg << "\n";
}

}  // namespace arborist::io

#pragma once

#include <cstdint>
#include <string>

#include "arborist/graph.hpp"

namespace arborist::io {

enum class Format { auto_detect, json, tsv };

Format format_from_name(const std::string& name);  // "json" | "tsv" | "auto"

// JSON shape: {"num_nodes": N, "edges": [{"u": tail, "v": head, "w": weight}, ...]}
// TSV shape:  one "tail<TAB>head<TAB>weight" line per edge, node count = max id + 1.
// Node 0 is the root in both. Parse failures throw Error(parse_error) naming
// the line/position; graph-invariant failures propagate from build_graph.
Graph parse_json_graph(const std::string& text);
Graph parse_tsv_graph(const std::string& text);

// auto_detect keys off the file extension (".tsv" vs anything else).
Graph read_graph_file(const std::string& path, Format format);

std::string graph_to_json(const Graph& g);
std::string graph_to_tsv(const Graph& g);

// Shortest decimal string that round-trips to the same double; integral
// values print without a decimal point.
std::string format_weight(double w);

// One output line per decoded tree:
//   {"k": 1, "weight": 260, "parent": [null, 0, 0, 4, 2]}
std::string tree_record(std::int64_t k, const Arborescence& d, std::int32_t node_count);

// Fully connected graph on `n` non-root nodes with pairwise-distinct integer
// weights; deterministic in the seed.
Graph random_dense_graph(std::int32_t n, std::uint64_t seed);

// Diagnostics gated by ARBORIST_LOG (off by default; "info" or "debug").
bool log_enabled(int level);  // 1 = info, 2 = debug
void log_line(int level, const std::string& msg);

}  // namespace arborist::io

#pragma once

#include <array>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "arborist/graph.hpp"

namespace testutil {

using arborist::Edge;
using arborist::Graph;
using arborist::NodeId;

// The worked-example graph: 5 nodes, 8 edges, best tree 260 / best dependency
// tree 210. Edge ids follow this insertion order throughout the tests.
inline Graph g0() {
  const std::vector<Edge> edges = {
      {0, 1, 90}, {0, 2, 40}, {1, 3, 10}, {2, 3, 30},
      {2, 4, 60}, {3, 2, 50}, {4, 1, 20}, {4, 3, 70},
  };
  return Graph::build(5, edges);
}

// Sparse random graph with distinct integer weights: every possible non-root
// slot is kept with probability ~density.
inline Graph random_graph(std::int32_t n, std::uint64_t seed, double density = 1.0) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  std::vector<double> weights;
  for (NodeId tail = 0; tail <= n; ++tail) {
    for (NodeId head = 1; head <= n; ++head) {
      if (tail == head) continue;
      if (density < 1.0 && (rng() % 1000000) >= static_cast<std::uint64_t>(density * 1000000))
        continue;
      edges.push_back(Edge{tail, head, 0.0});
    }
  }
  // distinct integer weights, shuffled deterministically
  for (std::size_t i = 0; i < edges.size(); ++i) weights.push_back(static_cast<double>(i + 1));
  for (std::size_t i = weights.size(); i > 1; --i) std::swap(weights[i - 1], weights[rng() % i]);
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].weight = weights[i];
  return Graph::build(n + 1, edges);
}

struct ProcResult {
  int exit_code = -1;
  std::string out;
};

// Runs a command, captures stdout, returns the exit code (stderr passes
// through).
inline ProcResult run_process(const std::string& cmd) {
  ProcResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return res;
  std::array<char, 4096> buf;
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  return res;
}

inline std::string cli_path() { return ARBORIST_CLI_PATH; }
inline std::string fixture(const std::string& name) {
  return std::string(ARBORIST_FIXTURES_DIR) + "/" + name;
}

}  // namespace testutil

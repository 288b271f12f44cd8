#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "arborist/io.hpp"
#include "arborist/kbest.hpp"
#include "helpers.hpp"

using namespace arborist;
using namespace arborist::io;

namespace {

bool same_graph(const Graph& a, const Graph& b) {
  if (a.node_count() != b.node_count() || a.base_edge_count() != b.base_edge_count()) return false;
  for (EdgeId id = 0; id < a.base_edge_count(); ++id)
    if (!(a.base_edge(id) == b.base_edge(id))) return false;
  return true;
}

}  // namespace

TEST_CASE("json parsing accepts the fixture and rejects malformed input") {
  Graph g = read_graph_file(testutil::fixture("g0.json"), Format::auto_detect);
  CHECK(same_graph(g, testutil::g0()));

  CHECK_THROWS_AS(parse_json_graph("{"), Error);
  CHECK_THROWS_AS(parse_json_graph("[]"), Error);
  CHECK_THROWS_AS(parse_json_graph("{\"edges\": []}"), Error);  // num_nodes missing
  CHECK_THROWS_AS(parse_json_graph("{\"num_nodes\": 2, \"edges\": [{\"u\": 0, \"w\": 1}]}"), Error);
  CHECK_THROWS_AS(parse_json_graph("{\"num_nodes\": 2, \"edges\": [{\"u\": 0.5, \"v\": 1, \"w\": 1}]}"),
                  Error);
  // graph invariants propagate: self loop
  CHECK_THROWS_AS(parse_json_graph("{\"num_nodes\": 3, \"edges\": [{\"u\": 1, \"v\": 1, \"w\": 1}]}"),
                  Error);
}

TEST_CASE("tsv parsing accepts the fixture and reports line numbers") {
  Graph g = read_graph_file(testutil::fixture("g0.tsv"), Format::auto_detect);
  CHECK(same_graph(g, testutil::g0()));

  try {
    parse_tsv_graph("0\t1\t3\n0\t2\tbogus\n");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_tsv_graph("1 2 3\n"), Error);  // spaces, not tabs
}

TEST_CASE("graph serialization round-trips both formats") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Graph g = testutil::random_graph(5, seed, 0.7);
    CHECK(same_graph(parse_json_graph(graph_to_json(g)), g));
    CHECK(same_graph(parse_tsv_graph(graph_to_tsv(g)), g));
  }
  // non-integral weights survive exactly
  const std::vector<Edge> edges = {{0, 1, 0.1}, {0, 2, 12345.6789}, {1, 2, 1e-17}};
  Graph g = Graph::build(3, edges);
  CHECK(same_graph(parse_json_graph(graph_to_json(g)), g));
  CHECK(same_graph(parse_tsv_graph(graph_to_tsv(g)), g));
}

TEST_CASE("weight formatting is round-trip exact and integer-clean") {
  CHECK(format_weight(260.0) == "260");
  CHECK(format_weight(0.0) == "0");
  CHECK(format_weight(-42.0) == "-42");
  CHECK(format_weight(0.1) == "0.1");
  const double tricky = 0.30000000000000004;
  CHECK(std::stod(format_weight(tricky)) == tricky);
}

TEST_CASE("tree records are stable JSON lines") {
  std::vector<Arborescence> trees = kbest(testutil::g0(), 1);
  CHECK(tree_record(1, trees[0], 5) ==
        "{\"k\": 1, \"weight\": 260, \"parent\": [null, 0, 0, 4, 2]}\n");
}

TEST_CASE("the generator is deterministic, dense, with distinct weights") {
  Graph a = random_dense_graph(6, 42);
  Graph b = random_dense_graph(6, 42);
  CHECK(same_graph(a, b));
  Graph c = random_dense_graph(6, 43);
  CHECK_FALSE(same_graph(a, c));

  CHECK(a.base_edge_count() == 7 * 6 - 6);  // all pairs minus self loops minus into-root
  std::set<double> weights;
  for (EdgeId id = 0; id < a.base_edge_count(); ++id) {
    const Edge& e = a.base_edge(id);
    CHECK(e.weight == static_cast<double>(static_cast<std::int64_t>(e.weight)));
    CHECK(weights.insert(e.weight).second);
  }
}

#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "../oracles.hpp"
#include "semmap/error.hpp"
#include "semmap/fixture.hpp"
#include "semmap/serialize.hpp"

using namespace semmap;

namespace {

std::size_t count_lines(const std::string& text, const std::string& needle) {
  std::size_t n = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

ConceptGraph fixture_tree() {
  auto dense = build_dense_graph(fixtures::supplement_adverbs());
  return tree_at_rank(dense, 0).to_graph(dense);
}

}  // namespace

TEST_CASE("weights in json") {
  CHECK(weight_to_json(Weight(7)) == json(7));
  CHECK(weight_to_json(Weight(3, 4)) == json("3/4"));
  CHECK(weight_from_json(json("6/8")) == Weight(3, 4));
  CHECK(weight_from_json(json(2)) == Weight(2));
  CHECK(to_string(Weight(-1, 2)) == "-1/2");
  CHECK(parse_weight("5") == Weight(5));
  CHECK_THROWS(parse_weight("1/0"));
  CHECK_THROWS(parse_weight("x"));
}

TEST_CASE("graph json round trip") {
  std::mt19937 rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = oracle::random_connected(rng, 2 + rng() % 10, 0.3, 0, 9);
    CHECK(graph_from_json(graph_to_json(g)) == g);
  }
  auto dense = build_dense_graph(fixtures::supplement_adverbs(),
                                 WeightMode::kNormalized);
  CHECK(graph_from_json(json::parse(graph_to_json(dense).dump())) == dense);
}

TEST_CASE("graph json defaults and errors") {
  auto g = graph_from_json(json::parse(R"({"n":3,"edges":[{"u":2,"v":0}]})"));
  CHECK(*g.weight(0, 2) == Weight(1));
  CHECK_THROWS_AS(graph_from_json(json::parse(R"({"edges":[]})")), ParseError);
  CHECK_THROWS_AS(
      graph_from_json(json::parse(R"({"n":2,"edges":[{"u":0,"v":5}]})")),
      ParseError);
}

TEST_CASE("graphml round trip") {
  auto t = fixture_tree();
  CHECK(graph_from_graphml(to_graphml(t)) == t);
  auto dense = build_dense_graph(fixtures::supplement_adverbs(),
                                 WeightMode::kNormalized);
  CHECK(graph_from_graphml(to_graphml(dense)) == dense);
}

TEST_CASE("dot has one statement per edge") {
  auto t = fixture_tree();
  auto dot = to_dot(t);
  CHECK(dot.rfind("graph semmap {", 0) == 0);
  CHECK(count_lines(dot, " -- ") == 17);
  CHECK(count_lines(dot, "style=dashed") == 0);
}

TEST_CASE("dot overlay dashes the missing reference edges") {
  auto t = fixture_tree();
  auto path = ConceptGraph::from_edges(18, {});
  for (NodeId i = 0; i + 1 < 18; ++i) path.add_edge(i, i + 1, Weight(1));
  DotStyle style;
  style.reference = &path;
  auto dot = to_dot(t, style);
  auto d = diff(t, path);
  CHECK(count_lines(dot, "style=dashed") == d.missing.size());
  CHECK(count_lines(dot, " -- ") == t.num_edges() + d.missing.size());
}

TEST_CASE("load_graph reads both formats") {
  auto t = fixture_tree();
  std::string base = std::string(SEMMAP_TEST_TMP) + "/serialize_load";
  {
    std::ofstream(base + ".json") << graph_to_json(t).dump();
    std::ofstream(base + ".graphml") << to_graphml(t);
    std::ofstream(base + ".txt") << to_graphml(t);
  }
  CHECK(load_graph(base + ".json") == t);
  CHECK(load_graph(base + ".graphml") == t);
  CHECK(load_graph(base + ".txt") == t);
  CHECK_THROWS_AS(load_graph(base + ".missing"), Error);
}

TEST_CASE("evaluation rows") {
  const auto& m = fixtures::supplement_adverbs();
  auto t = fixture_tree();
  auto e = evaluate(t, m, &t);
  auto j = evaluation_to_json(e);
  CHECK(j["size"] == 90);
  CHECK(j["recall_numerator"] == e.recall.satisfied);
  CHECK(j["accuracy"] == 1.0);
  auto row = evaluation_tsv_row("0", e);
  CHECK(row.rfind("0\t90\t", 0) == 0);
  CHECK(evaluation_tsv_row("0", evaluate(t, m)).find("\t-\n") != std::string::npos);
  CHECK(format_3g(0.857142) == "0.857");
}

TEST_CASE("graph formats by name") {
  CHECK(parse_graph_format("graphml") == GraphFormat::kGraphml);
  CHECK_THROWS_AS(parse_graph_format("png"), std::invalid_argument);
}

#include <doctest.h>

#include "../oracles.hpp"
#include "semmap/concept_graph.hpp"
#include "semmap/error.hpp"
#include "semmap/fixture.hpp"

using namespace semmap;

TEST_CASE("dense weights match pair counts from rows") {
  const auto& m = fixtures::supplement_adverbs();
  auto g = build_dense_graph(m);
  auto w = oracle::row_pair_counts(m);
  CHECK(g.num_edges() == 153);
  long sum = 0;
  for (const auto& e : g.edges()) {
    CHECK(e.w == Weight(w[e.u][e.v]));
    sum += w[e.u][e.v];
  }
  CHECK(sum == 286);
  CHECK(graph_size(g) == Weight(286));
}

TEST_CASE("dense size is the sum of C(|row|, 2)") {
  const auto& m = fixtures::supplement_adverbs();
  long expected = 0;
  for (std::size_t x = 0; x < m.num_forms(); ++x) {
    long k = m.function_set(x).size();
    expected += k * (k - 1) / 2;
  }
  CHECK(graph_size(build_dense_graph(m)) == Weight(expected));
}

TEST_CASE("normalized weights divide by the smaller column") {
  auto m = binarize({{1, 1, 0}, {1, 1, 1}, {1, 0, 0}});
  auto g = build_dense_graph(m, WeightMode::kNormalized);
  // columns: 3, 2, 1
  CHECK(*g.weight(0, 1) == Weight(2, 2));
  CHECK(*g.weight(0, 2) == Weight(1, 1));
  CHECK(*g.weight(1, 2) == Weight(1, 1));
  auto raw = build_dense_graph(m);
  CHECK(*raw.weight(0, 1) == Weight(2));
  CHECK(parse_weight_mode("normalized") == WeightMode::kNormalized);
  CHECK_THROWS(parse_weight_mode("log"));
}

TEST_CASE("edge bookkeeping") {
  ConceptGraph g(4, {"a", "b", "c", "d"});
  g.add_edge(2, 0, Weight(3));
  CHECK(g.has_edge(0, 2));
  CHECK(g.edges().front() == Edge{0, 2, Weight(3)});
  CHECK_THROWS_AS(g.add_edge(0, 2, Weight(1)), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(1, 1, Weight(1)), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(1, 2, Weight(-1)), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(1, 9, Weight(1)), std::out_of_range);
  CHECK_THROWS_AS(g.remove_edge(1, 3), std::invalid_argument);
  g.remove_edge(0, 2);
  CHECK(g.num_edges() == 0);
  CHECK(g.label(3) == "d");
  CHECK(ConceptGraph(3).label(2) == "2");
}

TEST_CASE("connectivity predicates") {
  auto path = ConceptGraph::from_edges(
      4, {{0, 1, Weight(1)}, {1, 2, Weight(1)}, {2, 3, Weight(1)}});
  CHECK(is_spanning_tree(path));
  CHECK(is_forest(path));
  std::vector<NodeId> ends{0, 3};
  CHECK_FALSE(is_connected_subset(path, ends));
  std::vector<NodeId> mid{1, 2, 3};
  CHECK(is_connected_subset(path, mid));
  std::vector<NodeId> one{2};
  CHECK(is_connected_subset(path, one));
  std::vector<NodeId> spread{3, 0, 1};
  auto parts = induced_components(path, spread);
  CHECK(parts == std::vector<std::vector<NodeId>>{{0, 1}, {3}});
  path.add_edge(0, 3, Weight(0));
  CHECK_FALSE(is_forest(path));
  CHECK(is_connected(path));
  CHECK_FALSE(is_spanning_tree(path));
  CHECK_FALSE(is_connected(ConceptGraph(2)));
}

TEST_CASE("subset counts on small shapes") {
  // path on 4: 3 + 2 + 1 intervals of size >= 2
  auto path = ConceptGraph::from_edges(
      4, {{0, 1, Weight(1)}, {1, 2, Weight(1)}, {2, 3, Weight(1)}});
  CHECK(count_connected_subsets(path) == 6);
  CHECK(count_connected_subsets(path, 1) == 10);
  // complete graph: every subset
  ConceptGraph k5(5);
  for (NodeId u = 0; u < 5; ++u)
    for (NodeId v = u + 1; v < 5; ++v) k5.add_edge(u, v, Weight(1));
  CHECK(count_connected_subsets(k5) == 32 - 1 - 5);
  CHECK(count_connected_subsets(ConceptGraph(3)) == 0);
}

TEST_CASE("tree DP agrees with exhaustive search") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto t = oracle::random_tree(rng, 1 + rng() % 12);
    for (std::size_t k : {1, 2, 3}) {
      CHECK(count_connected_subsets(t, k) == oracle::connected_subsets(t, k));
    }
  }
}

TEST_CASE("general counter agrees with exhaustive search") {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = oracle::random_graph(rng, 1 + rng() % 12, 0.1 + 0.08 * (rng() % 10));
    CHECK(count_connected_subsets(g, 2) == oracle::connected_subsets(g, 2));
    CHECK(count_connected_subsets(g, 1) == oracle::connected_subsets(g, 1));
  }
}

TEST_CASE("cap guards non-forests only") {
  auto dense = build_dense_graph(fixtures::supplement_adverbs());
  CHECK_THROWS_AS(count_connected_subsets(dense, 2, {10, false}), CapExceeded);
  // complete on 18 nodes
  CHECK(count_connected_subsets(dense) == (1u << 18) - 1 - 18);
  ConceptGraph star(40);
  for (NodeId v = 1; v < 40; ++v) star.add_edge(0, v, Weight(1));
  // star: any nonempty leaf set with the hub
  CHECK(count_connected_subsets(star, 2, {5, false}) == (1ull << 39) - 1);
}

TEST_CASE("adjacency matrix is structural") {
  auto g = ConceptGraph::from_edges(3, {{0, 1, Weight(0)}, {1, 2, Weight(5)}});
  auto a = adjacency_matrix(g);
  CHECK(a.at(0, 1));
  CHECK(a.at(1, 0));
  CHECK_FALSE(a.at(0, 0));
  CHECK(a.ones() == 4);
}

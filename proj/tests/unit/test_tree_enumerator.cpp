#include <doctest.h>

#include <map>
#include <set>

#include "../oracles.hpp"
#include "semmap/error.hpp"
#include "semmap/fixture.hpp"
#include "semmap/tree_enumerator.hpp"

using namespace semmap;

namespace {

std::vector<SpanningTree> drain(const ConceptGraph& g, EnumerationOptions o) {
  std::vector<SpanningTree> out;
  SpanningTreeStream s(g, o);
  while (auto t = s.next()) out.push_back(*t);
  return out;
}

EnumerationOptions all_edges() {
  return {ZeroWeightEdges::kInclude, kUnlimitedBudget};
}

}  // namespace

TEST_CASE("stream matches brute force on random graphs") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 7;
    auto g = oracle::random_connected(rng, n, 0.5, 0, 6);
    auto brute = oracle::spanning_trees(g);
    auto got = drain(g, all_edges());
    REQUIRE(got.size() == brute.size());

    std::multiset<Weight> want_w, got_w;
    std::set<std::vector<std::pair<NodeId, NodeId>>> seen;
    for (const auto& t : brute) want_w.insert(oracle::total(t));
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].rank == i);
      CHECK(got[i].total_weight == oracle::total(got[i].edges));
      CHECK(is_spanning_tree(got[i].to_graph(g)));
      got_w.insert(got[i].total_weight);
      CHECK(seen.insert(oracle::keys(got[i].edges)).second);
      if (i > 0) CHECK(got[i - 1].total_weight >= got[i].total_weight);
    }
    CHECK(got_w == want_w);
  }
}

TEST_CASE("complete graphs follow Cayley") {
  for (std::size_t n = 2; n <= 6; ++n) {
    ConceptGraph k(n);
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) k.add_edge(u, v, Weight(1));
    std::size_t cayley = 1;
    for (std::size_t i = 0; i + 2 < n; ++i) cayley *= n;
    CHECK(drain(k, all_edges()).size() == cayley);
  }
}

TEST_CASE("first tree is a maximum spanning tree") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = oracle::random_connected(rng, 2 + rng() % 6, 0.6, 0, 9);
    Weight best(0);
    for (const auto& t : oracle::spanning_trees(g))
      best = std::max(best, oracle::total(t));
    auto t = constrained_max_spanning_tree(g);
    REQUIRE(t.has_value());
    CHECK(t->total_weight == best);
  }
}

TEST_CASE("constraints are honoured") {
  auto g = ConceptGraph::from_edges(
      3, {{0, 1, Weight(5)}, {0, 2, Weight(4)}, {1, 2, Weight(1)}});
  auto t = constrained_max_spanning_tree(g, {{1, 2}}, {});
  REQUIRE(t);
  CHECK(t->total_weight == Weight(6));
  t = constrained_max_spanning_tree(g, {}, {{0, 1}, {0, 2}});
  CHECK_FALSE(t);
  CHECK_THROWS_AS(constrained_max_spanning_tree(g, {{0, 1}, {1, 2}, {0, 2}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(constrained_max_spanning_tree(ConceptGraph(3), {{0, 1}}),
                  std::invalid_argument);
}

TEST_CASE("ties break on sorted edge ids") {
  // triangle of equal weights: trees in lex order of edge-id lists
  auto g = ConceptGraph::from_edges(
      3, {{0, 1, Weight(1)}, {0, 2, Weight(1)}, {1, 2, Weight(1)}});
  auto trees = drain(g, all_edges());
  REQUIRE(trees.size() == 3);
  CHECK(trees[0].edges == std::vector<Edge>{{0, 1, Weight(1)}, {0, 2, Weight(1)}});
  CHECK(trees[1].edges == std::vector<Edge>{{0, 1, Weight(1)}, {1, 2, Weight(1)}});
  CHECK(trees[2].edges == std::vector<Edge>{{0, 2, Weight(1)}, {1, 2, Weight(1)}});
}

TEST_CASE("two runs give the same order") {
  std::mt19937 rng(8);
  auto g = oracle::random_connected(rng, 7, 0.7, 0, 3);
  auto a = drain(g, all_edges());
  auto b = drain(g, all_edges());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].edges == b[i].edges);
}

TEST_CASE("budget truncates without changing the prefix") {
  std::mt19937 rng(9);
  auto g = oracle::random_connected(rng, 6, 0.8, 1, 4);
  auto full = drain(g, all_edges());
  auto cut = drain(g, {ZeroWeightEdges::kInclude, 7});
  REQUIRE(cut.size() == std::min<std::size_t>(7, full.size()));
  for (std::size_t i = 0; i < cut.size(); ++i) CHECK(cut[i].edges == full[i].edges);
  CHECK_THROWS_AS(tree_at_rank(g, 7, {ZeroWeightEdges::kInclude, 7}),
                  std::out_of_range);
  CHECK_THROWS_AS(tree_at_rank(g, full.size(), all_edges()), std::out_of_range);
  CHECK(tree_at_rank(g, 3, all_edges()).edges == full[3].edges);
}

TEST_CASE("zero-weight edges") {
  auto g = ConceptGraph::from_edges(
      3, {{0, 1, Weight(2)}, {0, 2, Weight(0)}, {1, 2, Weight(1)}});
  CHECK(drain(g, all_edges()).size() == 3);
  CHECK(drain(g, {}).size() == 1);
  auto split = ConceptGraph::from_edges(3, {{0, 1, Weight(2)}, {1, 2, Weight(0)}});
  CHECK_THROWS_AS(SpanningTreeStream(split, {}), Error);
  CHECK(drain(split, all_edges()).size() == 1);
}

TEST_CASE("boundaries mark weight changes") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = oracle::random_connected(rng, 6, 0.6, 0, 3);
    auto trees = drain(g, all_edges());
    std::vector<WeightClass> want;
    for (const auto& t : trees) {
      if (want.empty() || want.back().weight != t.total_weight)
        want.push_back({t.total_weight, t.rank});
    }
    if (want.size() > 3) want.resize(3);
    CHECK(weight_class_boundaries(g, 3, all_edges()) == want);
    CachedTreeStream cached(g, all_edges());
    CHECK(cached.boundaries(3) == want);
    CHECK(cached.at(0).edges == trees[0].edges);
  }
}

TEST_CASE("fixture head") {
  auto dense = build_dense_graph(fixtures::supplement_adverbs());
  SpanningTreeStream s(dense);
  auto t = s.next();
  REQUIRE(t);
  CHECK(t->total_weight == Weight(90));
  CHECK(t->edges.size() == 17);
}

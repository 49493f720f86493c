#include <doctest.h>

#include "../oracles.hpp"
#include "semmap/fixture.hpp"
#include "semmap/metrics.hpp"
#include "semmap/semantic_maps.hpp"

using namespace semmap;

TEST_CASE("region of a form") {
  auto m = binarize({{1, 1, 0, 1}}, {false, true});
  auto g = ConceptGraph::from_edges(4, {{0, 1, Weight(2)}, {1, 2, Weight(1)}});
  auto r = region(g, m, 0);
  CHECK(r.nodes == std::vector<NodeId>{0, 1, 3});
  CHECK(r.induced_edges == std::vector<Edge>{{0, 1, Weight(2)}});
  CHECK_FALSE(r.connected);
  CHECK(r.components == std::vector<std::vector<NodeId>>{{0, 1}, {3}});
  CHECK_THROWS(region(g, m, 1));
}

TEST_CASE("violations complement recall") {
  std::mt19937 rng(41);
  const auto& m = fixtures::supplement_adverbs();
  for (int trial = 0; trial < 30; ++trial) {
    auto g = oracle::random_graph(rng, 18, 0.04 * (1 + trial % 8));
    auto v = violations(g, m);
    auto r = recall(g, m);
    CHECK(double(v.size()) / m.num_forms() == doctest::Approx(1.0 - r.value()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(v[i].form == r.violating_forms[i]);
      CHECK(v[i].components.size() > 1);
    }
  }
}

TEST_CASE("diff partitions the union") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = oracle::random_graph(rng, 8, 0.4);
    auto b = oracle::random_graph(rng, 8, 0.4);
    auto d = diff(a, b);
    CHECK(d.matched.size() + d.extra.size() == a.num_edges());
    CHECK(d.matched.size() + d.missing.size() == b.num_edges());
    auto back = diff(b, a);
    CHECK(back.missing == d.extra);
    CHECK(back.extra == d.missing);
    CHECK(back.matched.size() == d.matched.size());
    auto self = diff(a, a);
    CHECK(self.missing.empty());
    CHECK(self.extra.empty());
  }
}

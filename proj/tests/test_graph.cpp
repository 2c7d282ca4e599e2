#include <doctest.h>

#include "m2wis/graph.hpp"
#include "support/graphs.hpp"

using namespace m2wis;
using namespace m2wis::testing;

TEST_CASE("build_graph basic shapes") {
  auto g = make_graph({{0, 1}}, {3, 4});
  CHECK(g.live_count() == 2);
  CHECK(g.live_edges() == 1);

  auto single = make_graph({}, {7});
  CHECK(single.live_count() == 1);
  CHECK(single.live_edges() == 0);
  CHECK(single.weight(0) == 7);

  auto dedup = make_graph({{0, 1}, {1, 0}}, {1, 1});
  CHECK(dedup.live_edges() == 1);
  CHECK(dedup.degree(0) == 1);
  dedup.audit();
}

TEST_CASE("build_graph rejects bad input") {
  CHECK_THROWS_AS(make_graph({{0, 0}}, {1}), GraphError);
  CHECK_THROWS_AS(make_graph({{0, 2}}, {1, 1}), GraphError);
  CHECK_THROWS_AS(make_graph({}, {1, -1}), GraphError);
}

TEST_CASE("remove_vertex bookkeeping") {
  auto tri = complete_graph({1, 1, 1});
  tri.remove_vertex(0);
  CHECK(tri.live_count() == 2);
  CHECK(tri.live_edges() == 1);
  tri.audit();

  auto k2 = complete_graph({1, 1});
  k2.remove_vertex(0);
  k2.remove_vertex(1);
  CHECK(k2.empty());
  CHECK(k2.live_edges() == 0);
  CHECK_THROWS_AS(k2.remove_vertex(1), GraphError);
}

TEST_CASE("restore and fold primitives undo exactly") {
  auto g = path_graph({5, 1, 5, 2});
  const auto before_gen = g.generation();
  g.remove_vertex(1);
  const VertexId f = g.add_vertex(9);
  CHECK(f == 4);
  g.add_edge(f, 3);
  g.set_weight(2, 8);
  CHECK(g.generation() > before_gen);
  g.set_weight(2, 5);
  g.pop_edge(f, 3);
  g.pop_vertex();
  g.restore_vertex(1);
  g.audit();
  CHECK(g.capacity() == 4);
  CHECK(g.live_edges() == 3);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK(g.weight(2) == 5);
}

TEST_CASE("is_independent and set_weight") {
  auto p3 = path_graph({5, 1, 5});
  const VertexSet ends{0, 2};
  CHECK(is_independent(p3, ends));
  CHECK(set_weight(p3, ends) == 10);

  auto k2 = complete_graph({1, 1});
  const VertexSet both{0, 1};
  CHECK_FALSE(is_independent(k2, both));

  const VertexSet none;
  CHECK(is_independent(k2, none));
  CHECK(set_weight(k2, none) == 0);

  k2.remove_vertex(1);
  std::string why;
  const VertexSet dead{1};
  CHECK_FALSE(is_independent(k2, dead, &why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("is_independent agrees with a pairwise check") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 40;
    auto g = random_graph(rng, n, 0.15);
    VertexSet s;
    for (VertexId v = 0; v < n; ++v) {
      if (rng() % 3 == 0) s.push_back(v);
    }
    bool pairwise = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) pairwise &= !g.has_edge(s[i], s[j]);
    }
    CHECK(is_independent(g, s) == pairwise);
  }
}

TEST_CASE("audit holds under random removals and weight updates") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = random_graph(rng, 30, 0.2);
    for (int step = 0; step < 20; ++step) {
      const VertexId v = static_cast<VertexId>(rng() % 30);
      if (g.alive(v)) {
        if (rng() % 2) {
          g.remove_vertex(v);
        } else {
          g.set_weight(v, static_cast<Weight>(rng() % 50));
        }
      }
      g.audit();
    }
  }
}

TEST_CASE("is_maximal") {
  auto p3 = path_graph({1, 1, 1});
  CHECK(is_maximal(p3, VertexSet{1}));
  CHECK(is_maximal(p3, VertexSet{0, 2}));
  CHECK_FALSE(is_maximal(p3, VertexSet{0}));
}

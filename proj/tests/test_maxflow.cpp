#include <doctest.h>

#include "m2wis/maxflow.hpp"

using namespace m2wis;

TEST_CASE("max flow on a small network") {
  MaxFlow f(4);
  f.add_arc(0, 1, 3);
  f.add_arc(0, 2, 2);
  f.add_arc(1, 2, 5);
  f.add_arc(1, 3, 2);
  f.add_arc(2, 3, 3);
  CHECK(f.solve(0, 3) == 5);
  CHECK(f.source_side()[0]);
  CHECK_FALSE(f.source_side()[3]);
}

TEST_CASE("long chain does not recurse deeply") {
  const int n = 200000;
  MaxFlow f(n);
  for (int i = 0; i + 1 < n; ++i) f.add_arc(i, i + 1, 7);
  CHECK(f.solve(0, n - 1) == 7);
}

TEST_CASE("bipartite cover: single edge takes the lighter endpoint") {
  auto c = min_weight_bipartite_cover({4}, {9}, {{0, 0}});
  CHECK(c.weight == 4);
  CHECK(c.left[0] == 1);
  CHECK(c.right[0] == 0);
  auto d = min_weight_bipartite_cover({9}, {4}, {{0, 0}});
  CHECK(d.weight == 4);
  CHECK(d.left[0] == 0);
  CHECK(d.right[0] == 1);
}

TEST_CASE("bipartite cover matches brute force") {
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const int nl = 1 + static_cast<int>(rng() % 5);
    const int nr = 1 + static_cast<int>(rng() % 5);
    std::vector<Weight> lw(nl), rw(nr);
    for (auto& w : lw) w = static_cast<Weight>(rng() % 10);
    for (auto& w : rw) w = static_cast<Weight>(rng() % 10);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < nl; ++i) {
      for (int j = 0; j < nr; ++j) {
        if (rng() % 2) edges.emplace_back(i, j);
      }
    }
    const auto c = min_weight_bipartite_cover(lw, rw, edges);
    Weight w = 0;
    for (int i = 0; i < nl; ++i) w += c.left[i] ? lw[i] : 0;
    for (int j = 0; j < nr; ++j) w += c.right[j] ? rw[j] : 0;
    CHECK(w == c.weight);
    for (const auto& [i, j] : edges) CHECK((c.left[i] || c.right[j]));

    Weight best = -1;
    for (unsigned s = 0; s < (1u << (nl + nr)); ++s) {
      bool ok = true;
      for (const auto& [i, j] : edges) ok &= ((s >> i & 1) || (s >> (nl + j) & 1));
      if (!ok) continue;
      Weight sw = 0;
      for (int i = 0; i < nl; ++i) sw += (s >> i & 1) ? lw[i] : 0;
      for (int j = 0; j < nr; ++j) sw += (s >> (nl + j) & 1) ? rw[j] : 0;
      if (best < 0 || sw < best) best = sw;
    }
    CHECK(c.weight == best);
  }
}

#include <doctest.h>

#include <algorithm>
#include <array>

#include "m2wis/local_search.hpp"
#include "m2wis/oracle.hpp"
#include "support/graphs.hpp"

using namespace m2wis;
using namespace m2wis::testing;

namespace {

bool some_omega_move_improves(const SearchState& s) {
  const auto& g = s.graph();
  for (VertexId v : s.live()) {
    if (!s.in_solution(v) && g.weight(v) > s.solution_neighbor_weight(v)) return true;
  }
  return false;
}

bool some_pair_move_improves(const SearchState& s) {
  const auto& g = s.graph();
  for (VertexId v : s.live()) {
    if (!s.in_solution(v)) continue;
    std::vector<VertexId> one_tight;
    g.for_each_neighbor(v, [&](VertexId u) {
      if (s.tightness(u) == 1) one_tight.push_back(u);
    });
    for (std::size_t i = 0; i < one_tight.size(); ++i) {
      for (std::size_t j = i + 1; j < one_tight.size(); ++j) {
        const VertexId x = one_tight[i];
        const VertexId y = one_tight[j];
        if (!g.has_edge(x, y) && g.weight(x) + g.weight(y) > g.weight(v)) return true;
      }
    }
  }
  return false;
}

// All maximal independent sets of a small graph.
std::vector<VertexSet> maximal_sets(const WeightedGraph& g) {
  const auto live = g.live_vertices();
  std::vector<VertexSet> out;
  for (std::uint32_t mask = 0; mask < (1u << live.size()); ++mask) {
    VertexSet s;
    for (std::size_t i = 0; i < live.size(); ++i) {
      if (mask >> i & 1) s.push_back(live[i]);
    }
    if (!is_independent(g, s)) continue;
    bool maximal = true;
    for (std::size_t i = 0; i < live.size() && maximal; ++i) {
      if (mask >> i & 1) continue;
      VertexSet t = s;
      t.push_back(live[i]);
      std::sort(t.begin(), t.end());
      maximal = !is_independent(g, t);
    }
    if (maximal) out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("greedy maximization") {
  auto p3 = path_graph({5, 1, 5});
  SearchState s(p3);
  maximize_greedy(s, GreedyOrder::ByWeight);
  CHECK(s.solution() == VertexSet{0, 2});
  CHECK(s.weight() == 10);
  CHECK(s.free_vertices().empty());

  SearchState maximal(p3, VertexSet{1});
  maximize_greedy(maximal, GreedyOrder::ByWeight);
  CHECK(maximal.solution() == VertexSet{1});

  auto k3 = complete_graph({1, 2, 3});
  SearchState t(k3);
  maximize_greedy(t, GreedyOrder::ByWeight);
  CHECK(t.solution() == VertexSet{2});
  CHECK(t.weight() == 3);

  Rng rng(3);
  SearchState r(k3);
  maximize_greedy(r, GreedyOrder::UniformRandom, &rng);
  CHECK(r.size() == 1);
  CHECK_THROWS_AS(maximize_greedy(r, GreedyOrder::UniformRandom), std::invalid_argument);
}

TEST_CASE("omega one swap") {
  auto p3 = path_graph({5, 1, 5});
  SearchState s(p3, VertexSet{1});
  CHECK(omega_one_swap(s, 0));
  CHECK(s.weight() == 5);
  s.audit();
  maximize_greedy(s, GreedyOrder::ByWeight);
  CHECK(s.weight() == 10);

  auto light_ends = path_graph({1, 5, 1});
  SearchState heavy(light_ends, VertexSet{1});
  CHECK_FALSE(omega_one_swap(heavy, 0));
  CHECK(heavy.weight() == 5);

  auto edge = path_graph({2, 3});
  SearchState empty(edge);
  CHECK(empty.is_free(0));
  CHECK(omega_one_swap(empty, 0));
  CHECK(empty.solution() == VertexSet{0});
}

TEST_CASE("one two swap") {
  auto star = star_graph(3, {2, 2});
  SearchState s(star, VertexSet{0});
  CHECK(one_two_swap(s, 0));
  CHECK(s.weight() == 4);
  CHECK(s.solution() == VertexSet{1, 2});
  s.audit();

  auto p3 = path_graph({5, 1, 5});
  SearchState ends(p3, VertexSet{0, 2});
  CHECK_FALSE(one_two_swap(ends, 0));
  CHECK_FALSE(one_two_swap(ends, 2));

  // 1-tight neighbors 1,2,3 form a triangle.
  auto g = make_graph({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {1, 5, 5, 5});
  SearchState c(g, VertexSet{0});
  CHECK_FALSE(one_two_swap(c, 0));

  // Picks the heaviest independent pair.
  auto wide = star_graph(4, {3, 9, 2, 8});
  SearchState w(wide, VertexSet{0});
  CHECK(one_two_swap(w, 0));
  CHECK(w.solution() == VertexSet{2, 4});
}

TEST_CASE("vnd examples") {
  Rng rng(5);
  auto c5 = cycle_graph({1, 1, 1, 1, 1});
  SearchState s(c5, VertexSet{0});
  vnd(s, kDefaultLsIterations, rng);
  CHECK(s.weight() == 2);
  s.audit();

  auto p3 = path_graph({5, 1, 5});
  SearchState opt(p3, VertexSet{0, 2});
  vnd(opt, kDefaultLsIterations, rng);
  CHECK(opt.solution() == VertexSet{0, 2});

  SearchState capped(p3, VertexSet{1});
  CHECK(vnd(capped, 0, rng) == 0);
  CHECK(capped.solution() == VertexSet{1});
}

TEST_CASE("perturbation") {
  auto k2 = path_graph({1, 9});
  bool reached = false;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    SearchState s(k2, VertexSet{0});
    perturb(s, 1, rng);
    s.audit();
    reached |= s.weight() == 9;
  }
  CHECK(reached);

  Rng rng(1);
  SearchState s(k2, VertexSet{0});
  CHECK_THROWS_AS(perturb(s, 0, rng), std::invalid_argument);

  WeightedGraph empty;
  SearchState e(empty);
  perturb(e, 2, rng);
  CHECK(e.size() == 0);
}

TEST_CASE("perturbation schedule") {
  PerturbationSchedule p;
  CHECK(p.strength() == 1);
  for (int i = 0; i < 3; ++i) p.record(false);
  CHECK(p.strength() == 2);
  for (int i = 0; i < 3; ++i) p.record(false);
  CHECK(p.strength() == 4);
  for (int i = 0; i < 9; ++i) p.record(false);
  CHECK(p.strength() == 4);
  p.record(true);
  CHECK(p.strength() == 1);
}

TEST_CASE("state bookkeeping survives random operations") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = random_graph(rng, 5 + rng() % 40, 0.15);
    SearchState s(g);
    for (int step = 0; step < 60; ++step) {
      const VertexId v = static_cast<VertexId>(rng() % g.capacity());
      switch (rng() % 4) {
        case 0:
          if (s.is_free(v)) s.insert(v);
          break;
        case 1:
          if (s.in_solution(v)) s.remove(v);
          break;
        case 2:
          if (!s.in_solution(v)) s.force_insert(v);
          break;
        default:
          if (s.in_solution(v)) one_two_swap(s, v);
          else omega_one_swap(s, v);
      }
      s.audit();
      CHECK(s.weight() == set_weight(g, s.solution()));
    }
    auto ind = s.to_individual();
    CHECK(ind.weight == s.weight());
    CHECK(ind.members() == s.solution());
  }
}

TEST_CASE("vnd reaches a local optimum from every maximal start") {
  Rng rng(2718);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + rng() % 10;
    auto g = random_graph(rng, n, std::array{0.2, 0.35, 0.5}[trial % 3], 1, 20);
    const Weight alpha = brute_force(g).alpha_w;
    for (const auto& start : maximal_sets(g)) {
      SearchState s(g, start);
      const Weight before = s.weight();
      vnd(s, kDefaultLsIterations, rng);
      s.audit();
      CHECK(s.weight() >= before);
      CHECK(s.weight() <= alpha);
      CHECK_FALSE(some_omega_move_improves(s));
      CHECK_FALSE(some_pair_move_improves(s));
    }
  }
}

TEST_CASE("iterated local search never loses weight") {
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = random_graph(rng, 8 + rng() % 12, 0.3);
    SearchState s(g);
    maximize_greedy(s, GreedyOrder::ByWeight);
    const Weight start = s.weight();
    iterated_local_search(s, 2000, 10, rng);
    s.audit();
    CHECK(s.weight() >= start);
    CHECK(s.weight() <= brute_force(g).alpha_w);
  }
}

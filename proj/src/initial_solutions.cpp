#include <algorithm>
#include <queue>
#include <stdexcept>

#include "m2wis/evolution.hpp"

namespace m2wis {
namespace {

using Entry = std::pair<std::size_t, VertexId>;

// Residual-degree greedy independent set: take the vertex of smallest
// residual degree, drop its closed neighborhood, repeat.
VertexSet greedy_degree_mwis(const WeightedGraph& g) {
  std::vector<std::size_t> deg(g.capacity(), 0);
  std::vector<std::uint8_t> gone(g.capacity(), 0);
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (VertexId v : g.live_vertices()) {
    deg[v] = g.degree(v);
    heap.emplace(deg[v], v);
  }
  VertexSet out;
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (gone[v] || d != deg[v]) continue;
    out.push_back(v);
    gone[v] = 1;
    g.for_each_neighbor(v, [&](VertexId u) {
      if (gone[u]) return;
      gone[u] = 1;
      g.for_each_neighbor(u, [&](VertexId w) {
        if (!gone[w]) heap.emplace(--deg[w], w);
      });
    });
  }
  return out;
}

// Lightest-first cover: a vertex joins while it still has an uncovered edge.
std::vector<std::uint8_t> greedy_weight_cover(const WeightedGraph& g) {
  std::vector<VertexId> order = g.live_vertices();
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return g.weight(a) != g.weight(b) ? g.weight(a) < g.weight(b) : a < b;
  });
  std::vector<std::uint8_t> cover(g.capacity(), 0);
  for (VertexId v : order) {
    bool uncovered = false;
    g.for_each_neighbor(v, [&](VertexId u) { uncovered |= !cover[u]; });
    if (uncovered) cover[v] = 1;
  }
  return cover;
}

// Repeatedly covers the vertex with the most uncovered incident edges.
std::vector<std::uint8_t> greedy_degree_cover(const WeightedGraph& g) {
  std::vector<std::size_t> open(g.capacity(), 0);
  std::priority_queue<Entry> heap;
  for (VertexId v : g.live_vertices()) {
    open[v] = g.degree(v);
    if (open[v] > 0) heap.emplace(open[v], std::numeric_limits<VertexId>::max() - v);
  }
  std::vector<std::uint8_t> cover(g.capacity(), 0);
  while (!heap.empty()) {
    const auto [d, key] = heap.top();
    heap.pop();
    const VertexId v = std::numeric_limits<VertexId>::max() - key;
    if (cover[v] || d != open[v]) continue;
    cover[v] = 1;
    g.for_each_neighbor(v, [&](VertexId u) {
      if (cover[u]) return;
      if (--open[u] > 0) heap.emplace(open[u], std::numeric_limits<VertexId>::max() - u);
    });
    open[v] = 0;
  }
  return cover;
}

Individual complement_and_maximize(const WeightedGraph& g, const std::vector<std::uint8_t>& cover) {
  VertexSet rest;
  for (VertexId v : g.live_vertices()) {
    if (!cover[v]) rest.push_back(v);
  }
  SearchState state(g, rest);
  maximize_greedy(state, GreedyOrder::ByWeight);
  return state.to_individual();
}

}  // namespace

std::string_view init_strategy_name(InitStrategy s) {
  switch (s) {
    case InitStrategy::RandomMWIS: return "random_mwis";
    case InitStrategy::GreedyWeightMWIS: return "greedy_weight_mwis";
    case InitStrategy::GreedyDegreeMWIS: return "greedy_degree_mwis";
    case InitStrategy::GreedyWeightVC: return "greedy_weight_vc";
    case InitStrategy::GreedyDegreeVC: return "greedy_degree_vc";
  }
  return "?";
}

Individual build_initial(const WeightedGraph& g, InitStrategy strategy, Rng& rng) {
  switch (strategy) {
    case InitStrategy::RandomMWIS: {
      SearchState state(g);
      maximize_greedy(state, GreedyOrder::UniformRandom, &rng);
      return state.to_individual();
    }
    case InitStrategy::GreedyWeightMWIS: {
      SearchState state(g);
      maximize_greedy(state, GreedyOrder::ByWeight);
      return state.to_individual();
    }
    case InitStrategy::GreedyDegreeMWIS: {
      SearchState state(g, greedy_degree_mwis(g));
      maximize_greedy(state, GreedyOrder::ByWeight);
      return state.to_individual();
    }
    case InitStrategy::GreedyWeightVC:
      return complement_and_maximize(g, greedy_weight_cover(g));
    case InitStrategy::GreedyDegreeVC:
      return complement_and_maximize(g, greedy_degree_cover(g));
  }
  throw std::invalid_argument("build_initial: unknown strategy");
}

Population initial_population(const WeightedGraph& g, const EvolutionConfig& config, Rng& rng) {
  if (config.population_size == 0) throw std::invalid_argument("population size must be positive");
  Population pop;
  pop.members.reserve(config.population_size);
  std::uniform_int_distribution<std::size_t> pick(0, kAllInitStrategies.size() - 1);
  for (std::size_t i = 0; i < config.population_size; ++i) {
    Individual seed = build_initial(g, kAllInitStrategies[pick(rng)], rng);
    SearchState state(g, seed);
    vnd(state, config.ls_iterations, rng);
    pop.members.push_back(state.to_individual());
  }
  return pop;
}

}  // namespace m2wis

#include "support/graphs.hpp"

#include <deque>
#include <sstream>
#include <stdexcept>

namespace m2wis::testing {

WeightedGraph make_graph(const Edges& edges, const std::vector<Weight>& weights) {
  return WeightedGraph::build(edges, weights);
}

WeightedGraph random_graph(Rng& rng, std::size_t n, double p, Weight wmin, Weight wmax) {
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<Weight> weight(wmin, wmax);
  std::vector<Weight> w(n);
  for (auto& x : w) x = weight(rng);
  Edges edges;
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) {
      if (coin(rng)) edges.emplace_back(a, b);
    }
  }
  return make_graph(edges, w);
}

WeightedGraph path_graph(const std::vector<Weight>& weights) {
  Edges edges;
  for (VertexId v = 0; v + 1 < weights.size(); ++v) edges.emplace_back(v, v + 1);
  return make_graph(edges, weights);
}

WeightedGraph cycle_graph(const std::vector<Weight>& weights) {
  Edges edges;
  const auto n = static_cast<VertexId>(weights.size());
  for (VertexId v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return make_graph(edges, weights);
}

WeightedGraph complete_graph(const std::vector<Weight>& weights) {
  Edges edges;
  for (VertexId a = 0; a < weights.size(); ++a) {
    for (VertexId b = a + 1; b < weights.size(); ++b) edges.emplace_back(a, b);
  }
  return make_graph(edges, weights);
}

WeightedGraph star_graph(Weight center, const std::vector<Weight>& leaves) {
  std::vector<Weight> w{center};
  w.insert(w.end(), leaves.begin(), leaves.end());
  Edges edges;
  for (VertexId v = 1; v < w.size(); ++v) edges.emplace_back(0, v);
  return make_graph(edges, w);
}

bool is_connected(const WeightedGraph& g) {
  const auto live = g.live_vertices();
  if (live.empty()) return true;
  std::vector<std::uint8_t> seen(g.capacity(), 0);
  std::deque<VertexId> queue{live.front()};
  seen[live.front()] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    g.for_each_neighbor(v, [&](VertexId u) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        queue.push_back(u);
      }
    });
  }
  return reached == live.size();
}

std::vector<WeightedGraph> connected_catalog(std::size_t n, Rng& rng, std::size_t samples) {
  std::uniform_int_distribution<Weight> weight(1, 200);
  Edges all;
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) all.emplace_back(a, b);
  }
  std::vector<WeightedGraph> out;
  auto random_weights = [&] {
    std::vector<Weight> w(n);
    for (auto& x : w) x = weight(rng);
    return w;
  };
  if (n <= 5) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
      Edges edges;
      for (std::size_t i = 0; i < all.size(); ++i) {
        if (mask >> i & 1) edges.push_back(all[i]);
      }
      WeightedGraph g = make_graph(edges, random_weights());
      if (is_connected(g)) out.push_back(std::move(g));
    }
    return out;
  }
  std::uniform_real_distribution<double> density(0.15, 0.7);
  while (out.size() < samples) {
    WeightedGraph g = random_graph(rng, n, density(rng));
    if (is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

Weight naive_mwis(const WeightedGraph& g) {
  const auto live = g.live_vertices();
  if (live.size() > 24) throw std::invalid_argument("naive_mwis: graph too large");
  const std::size_t n = live.size();
  std::vector<std::uint32_t> adj(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (g.has_edge(live[i], live[j])) adj[i] |= 1u << j;
    }
  }
  Weight best = 0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    Weight w = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (s >> i & 1) {
        ok = (adj[i] & s) == 0;
        w += g.weight(live[i]);
      }
    }
    if (ok && w > best) best = w;
  }
  return best;
}

std::string describe(const WeightedGraph& g) {
  std::ostringstream os;
  os << "n=" << g.live_count() << " m=" << g.live_edges() << " w=[";
  for (VertexId v : g.live_vertices()) os << v << ":" << g.weight(v) << " ";
  os << "] e=[";
  for (VertexId v : g.live_vertices()) {
    g.for_each_neighbor(v, [&](VertexId u) {
      if (v < u) os << v << "-" << u << " ";
    });
  }
  os << "]";
  return os.str();
}

}  // namespace m2wis::testing

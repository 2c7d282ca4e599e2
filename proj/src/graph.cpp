#include "m2wis/graph.hpp"

#include <algorithm>
#include <numeric>

namespace m2wis {

WeightedGraph::WeightedGraph(std::size_t n)
    : n_original_(n),
      adjacency_(n),
      weight_(n, 0),
      alive_(n, 1),
      degree_(n, 0),
      live_count_(n) {}

WeightedGraph WeightedGraph::build(std::span<const std::pair<VertexId, VertexId>> edges,
                                   std::span<const Weight> weights) {
  const std::size_t n = weights.size();
  WeightedGraph g(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (weights[v] < 0) {
      throw GraphError("negative weight on vertex " + std::to_string(v));
    }
    g.weight_[v] = weights[v];
  }
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw GraphError("edge endpoint out of range: (" + std::to_string(u) + ", " +
                       std::to_string(v) + ")");
    }
    if (u == v) throw GraphError("self-loop on vertex " + std::to_string(u));
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = g.adjacency_[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    g.degree_[v] = static_cast<std::uint32_t>(list.size());
    g.live_edges_ += list.size();
  }
  g.live_edges_ /= 2;
  return g;
}

std::vector<VertexId> WeightedGraph::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  out.reserve(degree_[v]);
  for_each_neighbor(v, [&](VertexId u) { out.push_back(u); });
  return out;
}

std::vector<VertexId> WeightedGraph::live_vertices() const {
  std::vector<VertexId> out;
  out.reserve(live_count_);
  for (VertexId v = 0; v < alive_.size(); ++v) {
    if (alive_[v]) out.push_back(v);
  }
  return out;
}

bool WeightedGraph::has_edge(VertexId u, VertexId v) const {
  if (!alive(u) || !alive(v)) return false;
  const auto& a = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
  const VertexId target = &a == &adjacency_[u] ? v : u;
  return std::find(a.begin(), a.end(), target) != a.end();
}

Weight WeightedGraph::neighborhood_weight(VertexId v) const {
  Weight sum = 0;
  for_each_neighbor(v, [&](VertexId u) { sum += weight_[u]; });
  return sum;
}

Weight WeightedGraph::total_live_weight() const {
  Weight sum = 0;
  for (VertexId v = 0; v < alive_.size(); ++v) {
    if (alive_[v]) sum += weight_[v];
  }
  return sum;
}

void WeightedGraph::remove_vertex(VertexId v) {
  if (!alive(v)) throw GraphError("remove_vertex: vertex " + std::to_string(v) + " is not alive");
  for (VertexId u : adjacency_[v]) {
    if (alive_[u]) --degree_[u];
  }
  live_edges_ -= degree_[v];
  alive_[v] = 0;
  --live_count_;
  ++generation_;
}

void WeightedGraph::restore_vertex(VertexId v) {
  if (v >= alive_.size() || alive_[v]) {
    throw GraphError("restore_vertex: vertex " + std::to_string(v) + " is not dead");
  }
  std::uint32_t d = 0;
  for (VertexId u : adjacency_[v]) {
    if (alive_[u]) {
      ++degree_[u];
      ++d;
    }
  }
  degree_[v] = d;
  live_edges_ += d;
  alive_[v] = 1;
  ++live_count_;
  ++generation_;
}

void WeightedGraph::set_weight(VertexId v, Weight w) {
  if (w < 0) throw GraphError("negative weight on vertex " + std::to_string(v));
  weight_[v] = w;
  ++generation_;
}

VertexId WeightedGraph::add_vertex(Weight w) {
  if (w < 0) throw GraphError("negative weight for new vertex");
  const auto id = static_cast<VertexId>(adjacency_.size());
  adjacency_.emplace_back();
  weight_.push_back(w);
  alive_.push_back(1);
  degree_.push_back(0);
  ++live_count_;
  ++generation_;
  return id;
}

void WeightedGraph::add_edge(VertexId u, VertexId v) {
  if (u == v) throw GraphError("add_edge: self-loop");
  if (!alive(u) || !alive(v)) throw GraphError("add_edge: endpoint not alive");
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
  ++degree_[u];
  ++degree_[v];
  ++live_edges_;
  ++generation_;
}

void WeightedGraph::pop_vertex() {
  if (adjacency_.size() <= n_original_) throw GraphError("pop_vertex: no added vertex");
  const auto v = static_cast<VertexId>(adjacency_.size() - 1);
  if (alive_[v]) remove_vertex(v);
  auto& list = adjacency_[v];
  for (auto it = list.rbegin(); it != list.rend(); ++it) {
    auto& other = adjacency_[*it];
    if (other.empty() || other.back() != v) throw GraphError("pop_vertex: edit order violated");
    other.pop_back();
  }
  adjacency_.pop_back();
  weight_.pop_back();
  alive_.pop_back();
  degree_.pop_back();
  ++generation_;
}

void WeightedGraph::pop_edge(VertexId u, VertexId v) {
  auto& a = adjacency_[u];
  auto& b = adjacency_[v];
  if (a.empty() || b.empty() || a.back() != v || b.back() != u) {
    throw GraphError("pop_edge: edit order violated");
  }
  a.pop_back();
  b.pop_back();
  if (alive_[u] && alive_[v]) {
    --degree_[u];
    --degree_[v];
    --live_edges_;
  }
  ++generation_;
}

void WeightedGraph::compact_adjacency() {
  for (VertexId v = 0; v < adjacency_.size(); ++v) {
    auto& list = adjacency_[v];
    if (!alive_[v]) {
      list.clear();
      list.shrink_to_fit();
      continue;
    }
    std::erase_if(list, [&](VertexId u) { return !alive_[u]; });
  }
}

void WeightedGraph::audit() const {
  std::size_t count = 0;
  std::size_t endpoint_sum = 0;
  std::vector<std::uint8_t> seen(adjacency_.size(), 0);
  for (VertexId v = 0; v < adjacency_.size(); ++v) {
    if (!alive_[v]) continue;
    ++count;
    if (weight_[v] < 0) throw GraphError("audit: negative weight at " + std::to_string(v));
    std::uint32_t d = 0;
    for (VertexId u : adjacency_[v]) {
      if (!alive_[u]) continue;
      if (u == v) throw GraphError("audit: self-loop at " + std::to_string(v));
      if (seen[u]) throw GraphError("audit: duplicate neighbor entry at " + std::to_string(v));
      seen[u] = 1;
      ++d;
      const auto& back = adjacency_[u];
      if (std::find(back.begin(), back.end(), v) == back.end()) {
        throw GraphError("audit: asymmetric edge (" + std::to_string(v) + ", " +
                         std::to_string(u) + ")");
      }
    }
    for (VertexId u : adjacency_[v]) seen[u] = 0;
    if (d != degree_[v]) throw GraphError("audit: stale degree at " + std::to_string(v));
    endpoint_sum += d;
  }
  if (count != live_count_) throw GraphError("audit: live_count mismatch");
  if (endpoint_sum != 2 * live_edges_) throw GraphError("audit: live_edges mismatch");
}

bool is_independent(const WeightedGraph& g, std::span<const VertexId> set) {
  return is_independent(g, set, nullptr);
}

bool is_independent(const WeightedGraph& g, std::span<const VertexId> set,
                    std::string* diagnostic) {
  std::vector<std::uint8_t> member(g.capacity(), 0);
  for (VertexId v : set) {
    if (!g.alive(v)) {
      if (diagnostic) *diagnostic = "vertex " + std::to_string(v) + " is not alive";
      return false;
    }
    if (member[v]) {
      if (diagnostic) *diagnostic = "vertex " + std::to_string(v) + " listed twice";
      return false;
    }
    member[v] = 1;
  }
  for (VertexId v : set) {
    bool ok = true;
    g.for_each_neighbor(v, [&](VertexId u) {
      if (ok && member[u]) {
        ok = false;
        if (diagnostic) {
          *diagnostic = "edge (" + std::to_string(std::min(u, v)) + ", " +
                        std::to_string(std::max(u, v)) + ") joins two members";
        }
      }
    });
    if (!ok) return false;
  }
  return true;
}

Weight set_weight(const WeightedGraph& g, std::span<const VertexId> set) {
  return std::accumulate(set.begin(), set.end(), Weight{0},
                         [&](Weight acc, VertexId v) { return acc + g.weight(v); });
}

bool is_maximal(const WeightedGraph& g, std::span<const VertexId> set) {
  std::vector<std::uint8_t> covered(g.capacity(), 0);
  for (VertexId v : set) {
    covered[v] = 1;
    g.for_each_neighbor(v, [&](VertexId u) { covered[u] = 1; });
  }
  for (VertexId v : g.live_vertices()) {
    if (!covered[v]) return false;
  }
  return true;
}

}  // namespace m2wis

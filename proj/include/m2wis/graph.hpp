#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "m2wis/types.hpp"

namespace m2wis {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Undirected vertex-weighted graph that supports the edits performed by data
// reductions and their exact reversal.
//
// Removal only clears a liveness flag. Neighbor lists keep entries of dead
// vertices and every traversal filters them, so restoring a vertex is O(deg).
// Vertices created by folds get fresh ids >= original_size().
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t n);

  static WeightedGraph build(std::span<const std::pair<VertexId, VertexId>> edges,
                             std::span<const Weight> weights);

  std::size_t original_size() const { return n_original_; }
  std::size_t capacity() const { return adjacency_.size(); }
  std::size_t live_count() const { return live_count_; }
  std::size_t live_edges() const { return live_edges_; }
  bool empty() const { return live_count_ == 0; }

  bool alive(VertexId v) const { return v < alive_.size() && alive_[v] != 0; }
  Weight weight(VertexId v) const { return weight_[v]; }
  std::span<const Weight> weights() const { return weight_; }
  std::size_t degree(VertexId v) const { return degree_[v]; }

  // Bumped by every mutation; consumers use it to detect stale derived data.
  std::uint64_t generation() const { return generation_; }

  template <typename F>
  void for_each_neighbor(VertexId v, F&& f) const {
    for (VertexId u : adjacency_[v]) {
      if (alive_[u]) f(u);
    }
  }

  // Includes entries of dead vertices.
  const std::vector<VertexId>& raw_neighbors(VertexId v) const { return adjacency_[v]; }

  std::vector<VertexId> neighbors(VertexId v) const;
  std::vector<VertexId> live_vertices() const;
  bool has_edge(VertexId u, VertexId v) const;
  Weight neighborhood_weight(VertexId v) const;
  Weight total_live_weight() const;

  void remove_vertex(VertexId v);
  void restore_vertex(VertexId v);
  void set_weight(VertexId v, Weight w);
  VertexId add_vertex(Weight w);
  void add_edge(VertexId u, VertexId v);

  // Exact inverses of add_vertex / add_edge, valid in LIFO order only.
  void pop_vertex();
  void pop_edge(VertexId u, VertexId v);

  // Drops neighbor entries that point to dead vertices. Invalidates the
  // ability to undo earlier edits.
  void compact_adjacency();

  // Throws GraphError when a structural invariant is broken.
  void audit() const;

 private:
  std::size_t n_original_ = 0;
  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<Weight> weight_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint32_t> degree_;
  std::size_t live_count_ = 0;
  std::size_t live_edges_ = 0;
  std::uint64_t generation_ = 0;
};

bool is_independent(const WeightedGraph& g, std::span<const VertexId> set);

// Like is_independent but reports why a set is rejected.
bool is_independent(const WeightedGraph& g, std::span<const VertexId> set,
                    std::string* diagnostic);

Weight set_weight(const WeightedGraph& g, std::span<const VertexId> set);

// Every alive vertex is in the set or adjacent to a member.
bool is_maximal(const WeightedGraph& g, std::span<const VertexId> set);

}  // namespace m2wis

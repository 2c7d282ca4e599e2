#pragma once

#include <cstdint>
#include <vector>

#include "m2wis/types.hpp"

namespace m2wis {

// Dinic's algorithm on an explicit residual network with integer capacities.
class MaxFlow {
 public:
  using Capacity = std::int64_t;

  explicit MaxFlow(int nodes);

  int add_node();
  void add_arc(int from, int to, Capacity capacity);
  Capacity solve(int source, int sink);

  // Nodes reachable from the source in the final residual network, i.e. the
  // source side of a minimum cut. Valid after solve().
  const std::vector<std::uint8_t>& source_side() const { return reachable_; }

  int node_count() const { return static_cast<int>(head_.size()); }

 private:
  struct Arc {
    int to;
    int next;
    Capacity residual;
  };

  bool build_levels(int source, int sink);
  Capacity augment(int source, int sink, Capacity limit);
  void mark_reachable(int source);

  std::vector<Arc> arcs_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> cursor_;
  std::vector<std::uint8_t> reachable_;
};

// Minimum-weight vertex cover of a bipartite graph via a minimum cut: source to
// each left vertex with its weight, each right vertex to the sink with its
// weight, unbounded arcs along the edges. Returns indicator flags over
// left/right indices.
struct BipartiteCover {
  std::vector<std::uint8_t> left;
  std::vector<std::uint8_t> right;
  Weight weight = 0;
};

BipartiteCover min_weight_bipartite_cover(const std::vector<Weight>& left_weights,
                                          const std::vector<Weight>& right_weights,
                                          const std::vector<std::pair<int, int>>& edges);

}  // namespace m2wis

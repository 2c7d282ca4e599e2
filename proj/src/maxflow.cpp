#include "m2wis/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace m2wis {

MaxFlow::MaxFlow(int nodes) : head_(static_cast<std::size_t>(nodes), -1) {}

int MaxFlow::add_node() {
  head_.push_back(-1);
  return static_cast<int>(head_.size()) - 1;
}

void MaxFlow::add_arc(int from, int to, Capacity capacity) {
  if (capacity < 0) throw std::invalid_argument("MaxFlow: negative capacity");
  arcs_.push_back({to, head_[from], capacity});
  head_[from] = static_cast<int>(arcs_.size()) - 1;
  arcs_.push_back({from, head_[to], 0});
  head_[to] = static_cast<int>(arcs_.size()) - 1;
}

bool MaxFlow::build_levels(int source, int sink) {
  level_.assign(head_.size(), -1);
  std::vector<int> queue;
  queue.reserve(head_.size());
  level_[source] = 0;
  queue.push_back(source);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int v = queue[qi];
    for (int a = head_[v]; a != -1; a = arcs_[a].next) {
      const Arc& arc = arcs_[a];
      if (arc.residual > 0 && level_[arc.to] < 0) {
        level_[arc.to] = level_[v] + 1;
        queue.push_back(arc.to);
      }
    }
  }
  return level_[sink] >= 0;
}

MaxFlow::Capacity MaxFlow::augment(int source, int sink, Capacity limit) {
  // Iterative DFS along the level graph; `path` holds the arcs taken so far.
  std::vector<int> path;
  int v = source;
  while (true) {
    if (v == sink) {
      Capacity pushed = limit;
      for (int a : path) pushed = std::min(pushed, arcs_[a].residual);
      for (int a : path) {
        arcs_[a].residual -= pushed;
        arcs_[a ^ 1].residual += pushed;
      }
      return pushed;
    }
    int& a = cursor_[v];
    while (a != -1 && (arcs_[a].residual <= 0 || level_[arcs_[a].to] != level_[v] + 1)) {
      a = arcs_[a].next;
    }
    if (a != -1) {
      path.push_back(a);
      v = arcs_[a].to;
      continue;
    }
    // Dead end: retreat and skip the arc that led here.
    level_[v] = -1;
    if (path.empty()) return 0;
    path.pop_back();
    v = path.empty() ? source : arcs_[path.back()].to;
    cursor_[v] = arcs_[cursor_[v]].next;
  }
}

MaxFlow::Capacity MaxFlow::solve(int source, int sink) {
  Capacity total = 0;
  constexpr Capacity kUnbounded = std::numeric_limits<Capacity>::max();
  while (build_levels(source, sink)) {
    cursor_ = head_;
    while (Capacity pushed = augment(source, sink, kUnbounded)) total += pushed;
  }
  mark_reachable(source);
  return total;
}

void MaxFlow::mark_reachable(int source) {
  reachable_.assign(head_.size(), 0);
  std::vector<int> stack{source};
  reachable_[source] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int a = head_[v]; a != -1; a = arcs_[a].next) {
      const Arc& arc = arcs_[a];
      if (arc.residual > 0 && !reachable_[arc.to]) {
        reachable_[arc.to] = 1;
        stack.push_back(arc.to);
      }
    }
  }
}

BipartiteCover min_weight_bipartite_cover(const std::vector<Weight>& left_weights,
                                          const std::vector<Weight>& right_weights,
                                          const std::vector<std::pair<int, int>>& edges) {
  const int nl = static_cast<int>(left_weights.size());
  const int nr = static_cast<int>(right_weights.size());
  const int source = nl + nr;
  const int sink = source + 1;
  MaxFlow flow(nl + nr + 2);
  const Weight total = std::accumulate(left_weights.begin(), left_weights.end(), Weight{0}) +
                       std::accumulate(right_weights.begin(), right_weights.end(), Weight{0});
  const MaxFlow::Capacity unbounded = total + 1;
  for (int i = 0; i < nl; ++i) flow.add_arc(source, i, left_weights[i]);
  for (int j = 0; j < nr; ++j) flow.add_arc(nl + j, sink, right_weights[j]);
  for (const auto& [i, j] : edges) flow.add_arc(i, nl + j, unbounded);

  BipartiteCover cover;
  cover.weight = flow.solve(source, sink);
  cover.left.assign(static_cast<std::size_t>(nl), 0);
  cover.right.assign(static_cast<std::size_t>(nr), 0);
  const auto& side = flow.source_side();
  // Cut arcs: source->left with left on the sink side, right->sink with right
  // on the source side.
  for (int i = 0; i < nl; ++i) cover.left[i] = side[i] ? 0 : 1;
  for (int j = 0; j < nr; ++j) cover.right[j] = side[nl + j] ? 1 : 0;
  return cover;
}

}  // namespace m2wis

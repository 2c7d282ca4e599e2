#include "m2wis/oracle.hpp"

#include <bit>
#include <vector>

namespace m2wis {
namespace {

using Mask = std::uint64_t;

class BranchAndBound {
 public:
  BranchAndBound(std::vector<Mask> adjacency, std::vector<Weight> weights, std::uint64_t budget)
      : adj_(std::move(adjacency)), weight_(std::move(weights)), budget_(budget) {}

  void run() {
    const std::size_t n = weight_.size();
    const Mask all = n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
    search(all, 0, 0);
  }

  Weight best() const { return best_; }
  Mask best_set() const { return best_set_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  Weight mass(Mask m) const {
    Weight sum = 0;
    while (m) {
      sum += weight_[static_cast<std::size_t>(std::countr_zero(m))];
      m &= m - 1;
    }
    return sum;
  }

  void search(Mask candidates, Weight current, Mask chosen) {
    if (++nodes_ > budget_) throw OracleLimitError("oracle node budget exceeded");
    const Weight remaining = mass(candidates);
    if (current + remaining <= best_) return;

    int pivot = -1;
    int pivot_degree = -1;
    for (Mask m = candidates; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      const int d = std::popcount(adj_[v] & candidates);
      if (d > pivot_degree) {
        pivot = v;
        pivot_degree = d;
      }
    }
    if (pivot_degree <= 0) {
      // No edges left among the candidates: take them all.
      best_ = current + remaining;
      best_set_ = chosen | candidates;
      return;
    }
    const Mask bit = Mask{1} << pivot;
    search(candidates & ~adj_[pivot] & ~bit, current + weight_[pivot], chosen | bit);
    search(candidates & ~bit, current, chosen);
  }

  std::vector<Mask> adj_;
  std::vector<Weight> weight_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  Weight best_ = -1;
  Mask best_set_ = 0;
};

}  // namespace

OracleResult brute_force(const WeightedGraph& g, const OracleLimits& limits) {
  const auto live = g.live_vertices();
  if (live.size() > limits.max_vertices || live.size() > 64) {
    throw OracleLimitError("oracle: " + std::to_string(live.size()) +
                           " live vertices exceed the limit of " +
                           std::to_string(std::min<std::size_t>(limits.max_vertices, 64)));
  }
  OracleResult result;
  if (live.empty()) return result;

  std::vector<int> index(g.capacity(), -1);
  for (std::size_t i = 0; i < live.size(); ++i) index[live[i]] = static_cast<int>(i);
  std::vector<Mask> adjacency(live.size(), 0);
  std::vector<Weight> weights(live.size(), 0);
  for (std::size_t i = 0; i < live.size(); ++i) {
    weights[i] = g.weight(live[i]);
    g.for_each_neighbor(live[i], [&](VertexId u) { adjacency[i] |= Mask{1} << index[u]; });
  }

  BranchAndBound search(std::move(adjacency), std::move(weights), limits.node_budget);
  search.run();
  result.alpha_w = search.best();
  result.nodes = search.nodes();
  for (Mask m = search.best_set(); m; m &= m - 1) {
    result.witness.push_back(live[static_cast<std::size_t>(std::countr_zero(m))]);
  }
  return result;
}

}  // namespace m2wis

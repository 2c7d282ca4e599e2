#include <algorithm>
#include <stdexcept>

#include "m2wis/evolution.hpp"
#include "m2wis/maxflow.hpp"

namespace m2wis {
namespace {

void check_current(const WeightedGraph& g, const Partition& part, bool separator) {
  if (part.generation != g.generation() || part.block_of.size() != g.capacity()) {
    throw std::invalid_argument("combine: partition is stale for this graph");
  }
  if (part.has_separator != separator) {
    throw std::invalid_argument(separator ? "combine: vertex separator required"
                                          : "combine: edge partition required");
  }
}

void check_parent(const WeightedGraph& g, const Individual& ind) {
  if (ind.generation != g.generation() || ind.bits.size() != g.capacity()) {
    throw std::invalid_argument("combine: parent is stale for this graph");
  }
}

void check_parents(const WeightedGraph& g, const Partition& part,
                   std::span<const Individual* const> parents) {
  if (parents.size() != part.k) {
    throw std::invalid_argument("combine: expected one parent per block");
  }
  for (const Individual* p : parents) check_parent(g, *p);
}

Individual finish(const WeightedGraph& g, std::span<const VertexId> members,
                  std::size_t ls_iterations, Rng& rng) {
  SearchState state(g, members);
  maximize_greedy(state, GreedyOrder::ByWeight);
  vnd(state, ls_iterations, rng);
  return state.to_individual();
}

// Vertices of block b taken from `from`.
void take_block(const Partition& part, BlockId b, const Bitset& from, VertexSet& out) {
  from.for_each([&](VertexId v) {
    if (part.block_of[v] == b) out.push_back(v);
  });
}

std::vector<Bitset> block_bitsets(const WeightedGraph& g, const Partition& part) {
  std::vector<Bitset> blocks(part.k, Bitset(g.capacity()));
  for (VertexId v = 0; v < part.block_of.size(); ++v) {
    if (part.block_of[v] < part.k) blocks[part.block_of[v]].set(v);
  }
  return blocks;
}

std::vector<std::uint8_t> cover_of(const WeightedGraph& g, const Individual& ind) {
  std::vector<std::uint8_t> cover(g.capacity(), 0);
  for (VertexId v : g.live_vertices()) cover[v] = !ind.bits.test(v);
  return cover;
}

Individual complement(const WeightedGraph& g, const std::vector<std::uint8_t>& cover,
                      std::size_t ls_iterations, Rng& rng, CombineTrace* trace) {
  VertexSet in, covered;
  for (VertexId v : g.live_vertices()) {
    (cover[v] ? covered : in).push_back(v);
  }
  if (trace) trace->covers.push_back(std::move(covered));
  return finish(g, in, ls_iterations, rng);
}

// Adds a minimum-weight cover of the uncovered cut edges of a 2-way
// partition, computed by max flow.
void repair_two_way(const WeightedGraph& g, const Partition& part, std::vector<std::uint8_t>& cover) {
  std::vector<int> index(g.capacity(), -1);
  std::vector<VertexId> left, right;
  std::vector<std::pair<int, int>> edges;
  auto slot = [&](VertexId v) {
    if (index[v] < 0) {
      auto& side = part.block_of[v] == 0 ? left : right;
      index[v] = static_cast<int>(side.size());
      side.push_back(v);
    }
    return index[v];
  };
  for (const auto& [a, b] : part.cut_edges) {
    if (cover[a] || cover[b]) continue;
    const VertexId l = part.block_of[a] == 0 ? a : b;
    const VertexId r = l == a ? b : a;
    const int li = slot(l);
    const int ri = slot(r);
    edges.emplace_back(li, ri);
  }
  if (edges.empty()) return;
  std::vector<Weight> lw, rw;
  for (VertexId v : left) lw.push_back(g.weight(v));
  for (VertexId v : right) rw.push_back(g.weight(v));
  const BipartiteCover bc = min_weight_bipartite_cover(lw, rw, edges);
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (bc.left[i]) cover[left[i]] = 1;
  }
  for (std::size_t j = 0; j < right.size(); ++j) {
    if (bc.right[j]) cover[right[j]] = 1;
  }
}

// Greedy cover of the remaining uncovered cut edges: edges in ascending
// order, the endpoint with the smaller weight per uncovered edge joins.
void repair_greedy(const WeightedGraph& g, const Partition& part, std::vector<std::uint8_t>& cover) {
  std::vector<std::size_t> open(g.capacity(), 0);
  std::vector<std::pair<VertexId, VertexId>> todo;
  for (const auto& [a, b] : part.cut_edges) {
    if (cover[a] || cover[b]) continue;
    todo.emplace_back(a, b);
    ++open[a];
    ++open[b];
  }
  for (const auto& [a, b] : todo) {
    if (cover[a] || cover[b]) continue;
    // w(a)/open(a) < w(b)/open(b), cross-multiplied.
    const long double lhs = static_cast<long double>(g.weight(a)) * open[b];
    const long double rhs = static_cast<long double>(g.weight(b)) * open[a];
    const VertexId pick = lhs < rhs ? a : (rhs < lhs ? b : std::min(a, b));
    cover[pick] = 1;
    g.for_each_neighbor(pick, [&](VertexId u) {
      if (!cover[u] && part.block_of[u] != part.block_of[pick]) {
        --open[u];
        --open[pick];
      }
    });
  }
}

}  // namespace

std::vector<std::size_t> block_winners_by_solution(const WeightedGraph& g, const Partition& part,
                                                   std::span<const Individual* const> parents) {
  const auto blocks = block_bitsets(g, part);
  std::vector<std::size_t> winner(part.k, 0);
  for (BlockId b = 0; b < part.k; ++b) {
    Weight best = -1;
    for (std::size_t i = 0; i < parents.size(); ++i) {
      // w(I_i ∩ V_b) = w(I_i) - w(I_i \ V_b)
      const Weight score = parents[i]->bits.weighted_sum(g.weights()) -
                           parents[i]->bits.weighted_sum_excluding(blocks[b], g.weights());
      if (score > best) {
        best = score;
        winner[b] = i;
      }
    }
  }
  return winner;
}

std::vector<std::size_t> block_winners_by_cover(const WeightedGraph& g, const Partition& part,
                                                std::span<const Individual* const> parents) {
  const auto blocks = block_bitsets(g, part);
  std::vector<std::size_t> winner(part.k, 0);
  for (BlockId b = 0; b < part.k; ++b) {
    Weight best = 0;
    for (std::size_t i = 0; i < parents.size(); ++i) {
      // w(C_i ∩ V_b) = w(V_b \ I_i)
      const Weight score = blocks[b].weighted_sum_excluding(parents[i]->bits, g.weights());
      if (i == 0 || score < best) {
        best = score;
        winner[b] = i;
      }
    }
  }
  return winner;
}

std::pair<Individual, Individual> combine_vertex_separator(const WeightedGraph& g,
                                                           const Partition& part,
                                                           const Individual& a,
                                                           const Individual& b,
                                                           std::size_t ls_iterations, Rng& rng,
                                                           CombineTrace* trace) {
  check_current(g, part, true);
  if (part.k != 2) throw std::invalid_argument("combine: 2-way partition required");
  check_parent(g, a);
  check_parent(g, b);
  VertexSet o1, o2;
  take_block(part, 0, a.bits, o1);
  take_block(part, 1, b.bits, o1);
  take_block(part, 0, b.bits, o2);
  take_block(part, 1, a.bits, o2);
  std::sort(o1.begin(), o1.end());
  std::sort(o2.begin(), o2.end());
  if (trace) {
    trace->raw.push_back(o1);
    trace->raw.push_back(o2);
  }
  Individual first = finish(g, o1, ls_iterations, rng);
  Individual second = finish(g, o2, ls_iterations, rng);
  return {std::move(first), std::move(second)};
}

Individual combine_multiway_vertex_separator(const WeightedGraph& g, const Partition& part,
                                             std::span<const Individual* const> parents,
                                             std::size_t ls_iterations, Rng& rng,
                                             CombineTrace* trace) {
  check_current(g, part, true);
  check_parents(g, part, parents);
  const auto winner = block_winners_by_solution(g, part, parents);
  VertexSet offspring;
  for (BlockId b = 0; b < part.k; ++b) take_block(part, b, parents[winner[b]]->bits, offspring);
  std::sort(offspring.begin(), offspring.end());
  if (trace) trace->raw.push_back(offspring);
  return finish(g, offspring, ls_iterations, rng);
}

std::pair<Individual, Individual> combine_edge_separator(const WeightedGraph& g,
                                                         const Partition& part,
                                                         const Individual& a,
                                                         const Individual& b,
                                                         std::size_t ls_iterations, Rng& rng,
                                                         CombineTrace* trace) {
  check_current(g, part, false);
  if (part.k != 2) throw std::invalid_argument("combine: 2-way partition required");
  check_parent(g, a);
  check_parent(g, b);
  const auto ca = cover_of(g, a);
  const auto cb = cover_of(g, b);
  std::vector<std::uint8_t> c1(g.capacity(), 0), c2(g.capacity(), 0);
  for (VertexId v : g.live_vertices()) {
    const bool first_block = part.block_of[v] == 0;
    c1[v] = first_block ? ca[v] : cb[v];
    c2[v] = first_block ? cb[v] : ca[v];
  }
  repair_two_way(g, part, c1);
  repair_two_way(g, part, c2);
  Individual first = complement(g, c1, ls_iterations, rng, trace);
  Individual second = complement(g, c2, ls_iterations, rng, trace);
  return {std::move(first), std::move(second)};
}

Individual combine_multiway_edge_separator(const WeightedGraph& g, const Partition& part,
                                           std::span<const Individual* const> parents,
                                           std::size_t ls_iterations, Rng& rng,
                                           CombineTrace* trace) {
  check_current(g, part, false);
  check_parents(g, part, parents);
  const auto winner = block_winners_by_cover(g, part, parents);
  std::vector<std::uint8_t> cover(g.capacity(), 0);
  for (VertexId v : g.live_vertices()) {
    cover[v] = !parents[winner[part.block_of[v]]]->bits.test(v);
  }
  repair_greedy(g, part, cover);
  return complement(g, cover, ls_iterations, rng, trace);
}

bool mutate(Individual& offspring, const WeightedGraph& g, double probability,
            std::size_t ls_iterations, Rng& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (!(coin(rng) < probability)) return false;
  SearchState state(g, offspring);
  if (state.size() < state.live().size()) perturb(state, 1, rng);
  vnd(state, ls_iterations, rng);
  offspring = state.to_individual();
  return true;
}

}  // namespace m2wis

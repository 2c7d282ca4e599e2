#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "m2wis/bitset.hpp"
#include "m2wis/graph.hpp"

namespace m2wis {

// One population member: an independent set over the current kernel.
struct Individual {
  Bitset bits;
  Weight weight = 0;
  std::uint64_t generation = 0;

  VertexSet members() const { return bits.members(); }
};

Individual make_individual(const WeightedGraph& g, std::span<const VertexId> members);

// Solution under local search together with the tightness bookkeeping.
// The graph must not change while a state refers to it.
class SearchState {
 public:
  explicit SearchState(const WeightedGraph& g);
  SearchState(const WeightedGraph& g, const Individual& start);
  SearchState(const WeightedGraph& g, std::span<const VertexId> start);

  const WeightedGraph& graph() const { return *g_; }
  std::span<const VertexId> live() const { return live_; }

  bool in_solution(VertexId v) const { return in_[v] != 0; }
  std::uint32_t tightness(VertexId v) const { return tight_[v]; }
  bool is_free(VertexId v) const { return !in_[v] && tight_[v] == 0; }
  Weight weight() const { return weight_; }
  std::size_t size() const { return size_; }
  std::span<const VertexId> free_vertices() const { return free_; }

  // Weight of the solution vertices adjacent to v.
  Weight solution_neighbor_weight(VertexId v) const;

  // v must be free.
  void insert(VertexId v);
  void remove(VertexId v);
  // Inserts v and evicts its solution neighbors.
  void force_insert(VertexId v);

  // Vertices whose membership changed since the last drain.
  std::vector<VertexId> drain_changes();

  VertexSet solution() const;
  Individual to_individual() const;

  // Throws std::logic_error when tightness, free list or independence is off.
  void audit() const;

 private:
  void free_add(VertexId v);
  void free_drop(VertexId v);
  void note_change(VertexId v);

  const WeightedGraph* g_;
  std::vector<VertexId> live_;
  std::vector<std::uint8_t> in_;
  std::vector<std::uint32_t> tight_;
  std::vector<VertexId> free_;
  std::vector<std::uint32_t> free_pos_;
  std::vector<VertexId> changes_;
  std::vector<std::uint8_t> changed_;
  Weight weight_ = 0;
  std::size_t size_ = 0;
};

enum class GreedyOrder { ByWeight, UniformRandom };

// Inserts free vertices until none is left. UniformRandom requires rng.
void maximize_greedy(SearchState& state, GreedyOrder order, Rng* rng = nullptr);

// Fires iff v is outside the solution and w(v) exceeds the weight of its
// solution neighbors.
bool omega_one_swap(SearchState& state, VertexId v);

// Replaces solution vertex v with the heaviest non-adjacent pair of its
// 1-tight neighbors, if that pair outweighs v.
bool one_two_swap(SearchState& state, VertexId v);

inline constexpr std::size_t kDefaultLsIterations = 15000;

// Variable neighborhood descent over (w,1) and (1,2) moves. Every attempted
// move counts against max_iterations. Returns the number of attempts.
std::size_t vnd(SearchState& state, std::size_t max_iterations, Rng& rng);

// Forces `strength` random non-solution vertices into the solution, then
// completes it greedily by weight.
void perturb(SearchState& state, std::size_t strength, Rng& rng);

// Strength starts at 1, doubles after `patience` failed rounds up to 4 and
// resets on improvement.
class PerturbationSchedule {
 public:
  explicit PerturbationSchedule(std::size_t patience = 3) : patience_(patience) {}

  std::size_t strength() const { return strength_; }
  void record(bool improved);

 private:
  std::size_t patience_;
  std::size_t strength_ = 1;
  std::size_t failures_ = 0;
};

// vnd, then `rounds` perturb+vnd steps that keep the best state found.
void iterated_local_search(SearchState& state, std::size_t max_iterations, std::size_t rounds,
                           Rng& rng);

}  // namespace m2wis

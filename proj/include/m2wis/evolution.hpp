#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "m2wis/local_search.hpp"
#include "m2wis/partitioner.hpp"

namespace m2wis {

enum class InitStrategy {
  RandomMWIS,
  GreedyWeightMWIS,
  GreedyDegreeMWIS,
  GreedyWeightVC,
  GreedyDegreeVC,
};

inline constexpr std::array<InitStrategy, 5> kAllInitStrategies = {
    InitStrategy::RandomMWIS, InitStrategy::GreedyWeightMWIS, InitStrategy::GreedyDegreeMWIS,
    InitStrategy::GreedyWeightVC, InitStrategy::GreedyDegreeVC};

std::string_view init_strategy_name(InitStrategy s);

// Maximal independent set of the live graph.
Individual build_initial(const WeightedGraph& g, InitStrategy strategy, Rng& rng);

struct Population {
  std::vector<Individual> members;
  // Consecutive replace() calls that left the membership unchanged.
  std::size_t stagnation = 0;

  std::size_t best_index() const;
  std::size_t worst_index() const;
  const Individual& best() const { return members[best_index()]; }
};

struct EvolutionConfig {
  std::size_t population_size = 250;
  std::size_t ls_iterations = kDefaultLsIterations;
  double mutation_prob = 0.10;
  std::size_t unsuccessful_limit = 1000;
  std::size_t force_after = 100;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Each member comes from a uniformly drawn constructor and is then improved
// by vnd.
Population initial_population(const WeightedGraph& g, const EvolutionConfig& config, Rng& rng);

// Heavier of two uniformly drawn members; the first draw wins ties.
const Individual& tournament_select(const Population& pop, Rng& rng);

// Intermediate sets recorded by the combine operators: `raw` holds separator
// offspring before maximization, `covers` the repaired vertex covers of the
// edge-separator operators before complementing.
struct CombineTrace {
  std::vector<VertexSet> raw;
  std::vector<VertexSet> covers;
};

// Stale partitions or parents raise std::invalid_argument.
std::pair<Individual, Individual> combine_vertex_separator(const WeightedGraph& g,
                                                           const Partition& part,
                                                           const Individual& a,
                                                           const Individual& b,
                                                           std::size_t ls_iterations, Rng& rng,
                                                           CombineTrace* trace = nullptr);

Individual combine_multiway_vertex_separator(const WeightedGraph& g, const Partition& part,
                                             std::span<const Individual* const> parents,
                                             std::size_t ls_iterations, Rng& rng,
                                             CombineTrace* trace = nullptr);

std::pair<Individual, Individual> combine_edge_separator(const WeightedGraph& g,
                                                         const Partition& part,
                                                         const Individual& a,
                                                         const Individual& b,
                                                         std::size_t ls_iterations, Rng& rng,
                                                         CombineTrace* trace = nullptr);

Individual combine_multiway_edge_separator(const WeightedGraph& g, const Partition& part,
                                           std::span<const Individual* const> parents,
                                           std::size_t ls_iterations, Rng& rng,
                                           CombineTrace* trace = nullptr);

// Per-block parent choice of the multi-way operators: argmax of solution
// weight in the block (vertex separator) or argmin of cover weight (edge
// separator), lowest parent index on ties.
std::vector<std::size_t> block_winners_by_solution(const WeightedGraph& g, const Partition& part,
                                                   std::span<const Individual* const> parents);
std::vector<std::size_t> block_winners_by_cover(const WeightedGraph& g, const Partition& part,
                                                std::span<const Individual* const> parents);

// With probability `probability`: perturb, then vnd. Returns whether it ran.
bool mutate(Individual& offspring, const WeightedGraph& g, double probability,
            std::size_t ls_iterations, Rng& rng);

// Inserts `offspring` over the most similar lighter member. Duplicates are
// rejected. After `force_after` unchanged rounds the offspring replaces the
// most similar member other than the best one.
bool replace(Population& pop, Individual offspring, std::size_t force_after);

enum class CombineOp { VertexSeparator, MultiwayVertexSeparator, EdgeSeparator, MultiwayEdgeSeparator };

struct ProgressEvent {
  std::size_t combines = 0;
  CombineOp op = CombineOp::VertexSeparator;
  Weight offspring_weight = 0;
  Weight best_weight = 0;
  bool replaced = false;
};
using ProgressSink = std::function<void(const ProgressEvent&)>;

struct EvolveStats {
  std::size_t combines = 0;
  std::size_t replacements = 0;
  std::size_t improvements = 0;
  bool timed_out = false;
};

// Runs combine/mutate/replace rounds until `unsuccessful_limit` consecutive
// combines fail to improve the best weight, or the deadline passes.
EvolveStats evolve(const WeightedGraph& g, Population& pop, PartitionPool& pool,
                   const EvolutionConfig& config, Rng& rng, const ProgressSink& sink = {});

}  // namespace m2wis

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "m2wis/heuristic_reducer.hpp"
#include "m2wis/kernelizer.hpp"

namespace m2wis {

struct RoundTrace {
  std::size_t live_vertices = 0;
  Weight offset = 0;
  Weight best_evolve_weight = 0;
};

struct SolverConfig {
  double time_limit = 36000.0;  // seconds
  std::uint64_t seed = 0;
  std::size_t population_size = 250;
  std::size_t pool_size = 10;
  std::size_t ls_iterations = kDefaultLsIterations;
  std::uint32_t max_blocks = 64;
  double mutation_prob = 0.10;
  std::size_t unsuccessful_limit = 1000;
  std::size_t force_after = 100;
  std::string ordering = "baseline";
  SelectionStrategy strategy;

  // Polled between phases, never inside exact_reduce.
  const std::atomic<bool>* cancel = nullptr;
  std::function<void(std::size_t round, const RoundTrace&)> on_round;
};

// Throws std::invalid_argument naming the offending field.
void validate(const SolverConfig& config);

struct SolveResult {
  VertexSet solution;  // original ids, sorted
  Weight weight = 0;
  double elapsed = 0.0;
  std::size_t rounds = 0;
  std::vector<RoundTrace> kernel_trace;
  std::uint64_t seed = 0;
  bool timed_out = false;
};

// Alternates exact reduction, evolution on the kernel and heuristic
// reduction until the graph is empty or the time limit passes. The limit
// can be overrun by one exact_reduce call.
SolveResult solve(const WeightedGraph& g, const SolverConfig& config);

struct VerifyReport {
  bool ok = true;
  Weight weight = 0;
  std::vector<std::pair<VertexId, VertexId>> violations;
  std::vector<VertexId> duplicates;
  std::vector<VertexId> out_of_range;

  std::string summary() const;
};

VerifyReport verify_solution(const WeightedGraph& g, std::span<const VertexId> ids);

}  // namespace m2wis

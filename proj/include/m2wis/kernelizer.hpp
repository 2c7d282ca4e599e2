#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "m2wis/reductions.hpp"

namespace m2wis {

// Order in which the reduce loop tries the rules. A rule may be absent
// (disabled), but none may appear twice.
struct ReductionOrdering {
  std::string name;
  std::vector<Rule> sequence;
};

// Presets: baseline, time, weight, time_weight, best_perm.
ReductionOrdering ordering_preset(std::string_view name);
const std::vector<std::string>& ordering_preset_names();

// Throws std::invalid_argument if a rule repeats.
void validate_ordering(const ReductionOrdering& ordering);

// The reduced graph plus everything needed to map a solution on it back to
// the input graph: alpha_w(input) = offset + alpha_w(graph).
struct Kernel {
  WeightedGraph graph;
  std::vector<ReductionEvent> events;
  Weight offset = 0;
  // Input vertices that every reconstruction contains.
  VertexSet decided_in;
};

Kernel make_kernel(WeightedGraph g);

// Applies the rules of `ordering` until none fires. After every successful
// application the scan restarts at the first rule. Not time-limited.
void exact_reduce(Kernel& kernel, const ReductionOrdering& ordering,
                  const ReduceOptions& options = {});
Kernel exact_reduce(WeightedGraph g, const ReductionOrdering& ordering,
                    const ReduceOptions& options = {});

// Maps a solution on the kernel to a solution on the input graph. Throws
// std::invalid_argument when `kernel_solution` is not independent in the
// kernel graph.
VertexSet reconstruct(const Kernel& kernel, std::span<const VertexId> kernel_solution);

// Same mapping without the independence check. `members` are ids of the
// current graph, including vertices already deleted outside the event stack
// (forced vertices of the heuristic step).
VertexSet lift_solution(std::size_t original_size, std::size_t capacity,
                        std::span<const ReductionEvent> events,
                        std::span<const VertexId> members);

// True iff some rule of `ordering` applies anywhere in the graph. Uses a full
// scan; meant for checks, not for the reduce loop.
bool any_rule_applicable(const WeightedGraph& g, const ReductionOrdering& ordering,
                         const ReduceOptions& options = {});

enum class ExperimentMode { DisableOne, PresetSweep };

struct OrderingRow {
  std::string label;
  ReductionOrdering ordering;
  std::size_t kernel_vertices = 0;
  std::size_t kernel_edges = 0;
  double kernel_ratio = 0.0;  // |K| / |V|
  Weight offset = 0;
  double seconds = 0.0;
  std::size_t events = 0;
};

std::vector<OrderingRow> run_ordering_experiment(const WeightedGraph& g, ExperimentMode mode);

}  // namespace m2wis

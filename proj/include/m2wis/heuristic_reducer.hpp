#pragma once

#include <optional>
#include <string_view>

#include "m2wis/evolution.hpp"

namespace m2wis {

enum class SelectionKind { Weight, Degree, WeightOverDegree, Hybrid, SolutionParticipation };

struct SelectionStrategy {
  SelectionKind kind = SelectionKind::Hybrid;
  // Portion of the fittest individual to force. Empty means a single vertex.
  std::optional<double> fraction;
};

// weight, degree, weight-degree, hybrid, participation. Throws
// std::invalid_argument on anything else.
SelectionKind selection_from_name(std::string_view name);
std::string_view selection_name(SelectionKind kind);

// Higher is better for every kind; Degree is negated.
double rate(const SelectionStrategy& strategy, const WeightedGraph& g, const Population& pop,
            VertexId v);

// Forces the best rated vertices into `solution` and deletes their closed
// neighborhoods from g. The deletions are not recorded as reduction events.
// Returns the forced vertices, empty when nothing is left to force.
VertexSet heuristic_reduce(WeightedGraph& g, const Population& pop,
                           const SelectionStrategy& strategy, VertexSet& solution);

}  // namespace m2wis

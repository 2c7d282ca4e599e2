#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "m2wis/graph.hpp"

namespace m2wis {

// Exact reduction rules. VShapeMin is the third case of the extended V-shape
// rule, run as a rule of its own.
enum class Rule : std::uint8_t {
  NeighborhoodRemoval,
  DegreeOne,
  Triangle,
  VShape,
  VShapeMin,
  IsolatedClique,
  BasicSingleEdge,
  ExtendedSingleEdge,
  Domination,
  Twin,
  SimplicialTransfer,
  CWIS,
  NeighborhoodFolding,
};

inline constexpr std::size_t kRuleCount = 13;

inline constexpr std::array<Rule, kRuleCount> kAllRules = {
    Rule::NeighborhoodRemoval, Rule::DegreeOne,          Rule::Triangle,
    Rule::VShape,              Rule::VShapeMin,          Rule::IsolatedClique,
    Rule::BasicSingleEdge,     Rule::ExtendedSingleEdge, Rule::Domination,
    Rule::Twin,                Rule::SimplicialTransfer, Rule::CWIS,
    Rule::NeighborhoodFolding};

std::string_view rule_name(Rule rule);
std::optional<Rule> rule_from_name(std::string_view name);

// One primitive graph mutation, recorded so that an event can be undone.
struct GraphEdit {
  enum class Kind : std::uint8_t { RemoveVertex, SetWeight, AddVertex, AddEdge };
  Kind kind;
  VertexId a = kInvalidVertex;
  VertexId b = kInvalidVertex;
  Weight old_weight = 0;
};

// How a kernel decision maps back onto the vertices an event took away.
enum class Lift : std::uint8_t {
  // Removed vertices stay out of the solution.
  Exclude,
  // `include` joins the solution unconditionally.
  Include,
  // `include` joins unless some vertex of `guards` is in the solution.
  Guarded,
  // Fold vertex in: `fold_members` join. Otherwise `include` joins.
  Fold,
  // Degree-two vertex v with non-adjacent x, y where x gained N(y):
  // y in -> keep; x in -> add y; neither -> add v. pivots = {v, x, y}.
  VShapeShift,
  // Fold vertex in -> x and y join; x or y in -> keep; else v joins.
  // pivots = {v, x, y}.
  VShapeMin,
};

struct ReductionEvent {
  Rule rule = Rule::NeighborhoodRemoval;
  std::uint8_t rule_case = 0;
  Lift lift = Lift::Exclude;
  std::vector<VertexId> removed;
  std::vector<std::pair<VertexId, Weight>> weight_edits;  // (vertex, prior weight)
  std::optional<VertexId> fold_vertex;
  std::vector<VertexId> fold_members;
  std::vector<VertexId> include;
  std::vector<VertexId> guards;
  std::array<VertexId, 3> pivots{kInvalidVertex, kInvalidVertex, kInvalidVertex};
  Weight offset_delta = 0;
  std::vector<GraphEdit> edits;
};

using EventSink = std::vector<ReductionEvent>;

// Reverts the graph to its state before `event`. Events must be undone in
// reverse order of application.
void undo_event(WeightedGraph& g, const ReductionEvent& event);

struct ReduceOptions {
  // Apply CWIS when the best critical set has value exactly zero.
  bool cwis_allow_zero = false;
};

// Each rule returns true iff it fired; on success the graph is rewritten and
// exactly one event is appended.
bool apply_neighborhood_removal(WeightedGraph& g, VertexId v, EventSink& events);
bool apply_degree_one(WeightedGraph& g, VertexId v, EventSink& events);
bool apply_triangle(WeightedGraph& g, VertexId v, EventSink& events);
bool apply_v_shape(WeightedGraph& g, VertexId v, EventSink& events);
bool apply_v_shape_min(WeightedGraph& g, VertexId v, EventSink& events);
bool apply_isolated_clique(WeightedGraph& g, VertexId v, EventSink& events);
// Removes v when w(v) + w(N(u) \ N[v]) <= w(u).
bool apply_basic_single_edge(WeightedGraph& g, VertexId u, VertexId v, EventSink& events);
// Removes N(u) ∩ N(v) when w(v) >= w(N(v)) - w(u).
bool apply_extended_single_edge(WeightedGraph& g, VertexId u, VertexId v, EventSink& events);
// Removes u when N[u] ⊇ N[v] and w(u) <= w(v); on a tie the lower id goes.
bool apply_domination(WeightedGraph& g, VertexId u, VertexId v, EventSink& events);
bool apply_twin(WeightedGraph& g, VertexId u, VertexId v, EventSink& events);
bool apply_simplicial_transfer(WeightedGraph& g, VertexId v, EventSink& events);
bool apply_cwis(WeightedGraph& g, EventSink& events, const ReduceOptions& options = {});
bool apply_neighborhood_folding(WeightedGraph& g, VertexId v, EventSink& events);

// Vertex-driven entry point used by the reduce loop: tries `rule` at v and,
// for edge and pair rules, at every pair anchored at v.
bool apply_rule_at(Rule rule, WeightedGraph& g, VertexId v, EventSink& events);

// The best critical weighted independent set of the live graph and its value
// w(U) - w(N(U)), computed by a minimum cut on the bipartite double cover.
struct CriticalSet {
  VertexSet members;
  Weight value = 0;
};
CriticalSet critical_weighted_independent_set(const WeightedGraph& g);

}  // namespace m2wis

#include "m2wis/heuristic_reducer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace m2wis {
namespace {

double participation_score(std::size_t count, Weight w) {
  return static_cast<double>(count) - (w > 0 ? 1.0 / static_cast<double>(w) : 1.0);
}

double structural_score(SelectionKind kind, const WeightedGraph& g, VertexId v) {
  switch (kind) {
    case SelectionKind::Weight:
      return static_cast<double>(g.weight(v));
    case SelectionKind::Degree:
      return -static_cast<double>(g.degree(v));
    case SelectionKind::WeightOverDegree:
      if (g.degree(v) == 0) return std::numeric_limits<double>::infinity();
      return static_cast<double>(g.weight(v)) / static_cast<double>(g.degree(v));
    case SelectionKind::Hybrid:
      return static_cast<double>(g.weight(v) - g.neighborhood_weight(v));
    case SelectionKind::SolutionParticipation:
      break;
  }
  throw std::logic_error("structural_score: participation needs the population");
}

void force(WeightedGraph& g, VertexId v) {
  for (VertexId u : g.neighbors(v)) g.remove_vertex(u);
  g.remove_vertex(v);
}

}  // namespace

SelectionKind selection_from_name(std::string_view name) {
  if (name == "weight") return SelectionKind::Weight;
  if (name == "degree") return SelectionKind::Degree;
  if (name == "weight-degree") return SelectionKind::WeightOverDegree;
  if (name == "hybrid") return SelectionKind::Hybrid;
  if (name == "participation") return SelectionKind::SolutionParticipation;
  throw std::invalid_argument("unknown selection '" + std::string(name) +
                              "'; expected weight, degree, weight-degree, hybrid or participation");
}

std::string_view selection_name(SelectionKind kind) {
  switch (kind) {
    case SelectionKind::Weight: return "weight";
    case SelectionKind::Degree: return "degree";
    case SelectionKind::WeightOverDegree: return "weight-degree";
    case SelectionKind::Hybrid: return "hybrid";
    case SelectionKind::SolutionParticipation: return "participation";
  }
  return "?";
}

double rate(const SelectionStrategy& strategy, const WeightedGraph& g, const Population& pop,
            VertexId v) {
  if (!g.alive(v)) throw std::invalid_argument("rate: vertex is not alive");
  if (strategy.kind != SelectionKind::SolutionParticipation) {
    return structural_score(strategy.kind, g, v);
  }
  std::size_t count = 0;
  for (const Individual& m : pop.members) count += m.bits.test(v);
  return participation_score(count, g.weight(v));
}

VertexSet heuristic_reduce(WeightedGraph& g, const Population& pop,
                           const SelectionStrategy& strategy, VertexSet& solution) {
  if (pop.members.empty()) throw std::invalid_argument("heuristic_reduce: empty population");
  if (strategy.fraction && !(*strategy.fraction > 0.0 && *strategy.fraction <= 1.0)) {
    throw std::invalid_argument("heuristic_reduce: fraction must be in (0, 1]");
  }
  if (g.empty()) return {};
  for (const Individual& m : pop.members) {
    if (m.generation != g.generation() || m.bits.size() != g.capacity()) {
      throw std::invalid_argument("heuristic_reduce: population is stale for this graph");
    }
  }

  VertexSet forced;
  if (strategy.kind == SelectionKind::SolutionParticipation) {
    std::vector<std::size_t> count(g.capacity(), 0);
    for (const Individual& m : pop.members) m.bits.for_each([&](VertexId v) { ++count[v]; });
    VertexId best = kInvalidVertex;
    double best_score = 0;
    for (VertexId v : g.live_vertices()) {
      const double s = participation_score(count[v], g.weight(v));
      if (best == kInvalidVertex || s > best_score) {
        best = v;
        best_score = s;
      }
    }
    forced.push_back(best);
  } else {
    const VertexSet fittest = pop.best().members();
    if (fittest.empty()) return {};
    std::vector<std::pair<double, VertexId>> scored;
    scored.reserve(fittest.size());
    for (VertexId v : fittest) scored.emplace_back(structural_score(strategy.kind, g, v), v);
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::size_t take = 1;
    if (strategy.fraction) {
      const double want = std::ceil(*strategy.fraction * static_cast<double>(fittest.size()) - 1e-9);
      take = std::clamp<std::size_t>(static_cast<std::size_t>(want), 1, fittest.size());
    }
    for (std::size_t i = 0; i < take; ++i) forced.push_back(scored[i].second);
    std::sort(forced.begin(), forced.end());
  }

  for (VertexId v : forced) force(g, v);
  solution.insert(solution.end(), forced.begin(), forced.end());
  return forced;
}

}  // namespace m2wis

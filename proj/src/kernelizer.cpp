#include "m2wis/kernelizer.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <stdexcept>

namespace m2wis {
namespace {

using R = Rule;

const std::vector<std::pair<std::string, std::vector<Rule>>>& presets() {
  static const std::vector<std::pair<std::string, std::vector<Rule>>> table = {
      {"baseline",
       {R::NeighborhoodRemoval, R::DegreeOne, R::Triangle, R::VShape, R::VShapeMin,
        R::IsolatedClique, R::BasicSingleEdge, R::ExtendedSingleEdge, R::Domination, R::Twin,
        R::SimplicialTransfer, R::CWIS, R::NeighborhoodFolding}},
      // Decreasing mean running time when the rule is disabled.
      {"time",
       {R::BasicSingleEdge, R::IsolatedClique, R::VShape, R::Twin, R::DegreeOne,
        R::NeighborhoodRemoval, R::ExtendedSingleEdge, R::VShapeMin, R::Triangle, R::Domination,
        R::SimplicialTransfer, R::CWIS, R::NeighborhoodFolding}},
      // Increasing mean offset when the rule is disabled.
      {"weight",
       {R::IsolatedClique, R::CWIS, R::NeighborhoodFolding, R::BasicSingleEdge, R::VShape,
        R::VShapeMin, R::Twin, R::Domination, R::NeighborhoodRemoval, R::DegreeOne, R::Triangle,
        R::SimplicialTransfer, R::ExtendedSingleEdge}},
      // Decreasing t - 10 w.
      {"time_weight",
       {R::IsolatedClique, R::BasicSingleEdge, R::CWIS, R::VShape, R::Twin, R::DegreeOne,
        R::VShapeMin, R::NeighborhoodRemoval, R::Domination, R::ExtendedSingleEdge, R::Triangle,
        R::SimplicialTransfer, R::NeighborhoodFolding}},
      // Best permutation of the third rule group.
      {"best_perm",
       {R::NeighborhoodRemoval, R::DegreeOne, R::Triangle, R::VShape, R::VShapeMin,
        R::IsolatedClique, R::Twin, R::CWIS, R::SimplicialTransfer, R::Domination,
        R::BasicSingleEdge, R::ExtendedSingleEdge, R::NeighborhoodFolding}},
  };
  return table;
}

// Per-rule FIFO of candidate vertices with membership flags.
class CandidateQueue {
 public:
  void push(VertexId v) {
    if (v >= queued_.size()) queued_.resize(static_cast<std::size_t>(v) + 1, 0);
    if (queued_[v]) return;
    queued_[v] = 1;
    items_.push_back(v);
  }
  bool pop(VertexId& v) {
    if (items_.empty()) return false;
    v = items_.front();
    items_.pop_front();
    queued_[v] = 0;
    return true;
  }

 private:
  std::deque<VertexId> items_;
  std::vector<std::uint8_t> queued_;
};

// Vertices whose rule conditions may have changed because of `event`: the
// mutation sites and everything within two hops of them.
std::vector<VertexId> affected_vertices(const WeightedGraph& g, const ReductionEvent& event) {
  std::vector<std::uint8_t> seen(g.capacity(), 0);
  std::vector<VertexId> frontier;
  auto add = [&](VertexId v) {
    if (g.alive(v) && !seen[v]) {
      seen[v] = 1;
      frontier.push_back(v);
    }
  };
  for (VertexId r : event.removed) {
    for (VertexId u : g.raw_neighbors(r)) add(u);
  }
  for (const auto& [v, w] : event.weight_edits) add(v);
  if (event.fold_vertex) add(*event.fold_vertex);
  for (const GraphEdit& e : event.edits) {
    if (e.kind == GraphEdit::Kind::AddEdge) {
      add(e.a);
      add(e.b);
    }
  }
  std::size_t begin = 0;
  for (int hop = 0; hop < 2; ++hop) {
    const std::size_t end = frontier.size();
    for (std::size_t i = begin; i < end; ++i) {
      g.for_each_neighbor(frontier[i], [&](VertexId u) { add(u); });
    }
    begin = end;
  }
  std::sort(frontier.begin(), frontier.end());
  return frontier;
}

}  // namespace

const std::vector<std::string>& ordering_preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, seq] : presets()) out.push_back(name);
    return out;
  }();
  return names;
}

ReductionOrdering ordering_preset(std::string_view name) {
  for (const auto& [preset, seq] : presets()) {
    if (preset == name) return {preset, seq};
  }
  std::string known;
  for (const auto& n : ordering_preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown ordering '" + std::string(name) + "'; presets: " + known);
}

void validate_ordering(const ReductionOrdering& ordering) {
  std::array<bool, kRuleCount> seen{};
  for (Rule r : ordering.sequence) {
    auto& flag = seen[static_cast<std::size_t>(r)];
    if (flag) {
      throw std::invalid_argument("ordering '" + ordering.name + "' repeats rule " +
                                  std::string(rule_name(r)));
    }
    flag = true;
  }
}

Kernel make_kernel(WeightedGraph g) {
  Kernel k;
  k.graph = std::move(g);
  return k;
}

void exact_reduce(Kernel& kernel, const ReductionOrdering& ordering,
                  const ReduceOptions& options) {
  validate_ordering(ordering);
  WeightedGraph& g = kernel.graph;
  const auto& seq = ordering.sequence;
  std::vector<CandidateQueue> queues(seq.size());
  for (VertexId v : g.live_vertices()) {
    for (auto& q : queues) q.push(v);
  }
  bool cwis_dirty = true;

  while (true) {
    bool fired = false;
    for (std::size_t r = 0; r < seq.size() && !fired; ++r) {
      if (seq[r] == Rule::CWIS) {
        if (cwis_dirty) {
          cwis_dirty = false;
          fired = apply_cwis(g, kernel.events, options);
        }
        continue;
      }
      VertexId v = kInvalidVertex;
      while (!fired && queues[r].pop(v)) fired = apply_rule_at(seq[r], g, v, kernel.events);
    }
    if (!fired) break;

    const ReductionEvent& event = kernel.events.back();
    kernel.offset += event.offset_delta;
    if (event.lift == Lift::Include) {
      for (VertexId v : event.include) {
        if (v < g.original_size()) kernel.decided_in.push_back(v);
      }
    }
    for (VertexId v : affected_vertices(g, event)) {
      for (auto& q : queues) q.push(v);
    }
    cwis_dirty = true;
  }
  std::sort(kernel.decided_in.begin(), kernel.decided_in.end());
}

Kernel exact_reduce(WeightedGraph g, const ReductionOrdering& ordering,
                    const ReduceOptions& options) {
  Kernel k = make_kernel(std::move(g));
  exact_reduce(k, ordering, options);
  return k;
}

VertexSet lift_solution(std::size_t original_size, std::size_t capacity,
                        std::span<const ReductionEvent> events,
                        std::span<const VertexId> members) {
  std::vector<std::uint8_t> in(capacity, 0);
  for (VertexId v : members) {
    if (v >= capacity) throw std::out_of_range("lift_solution: vertex id beyond graph");
    in[v] = 1;
  }
  for (auto it = events.rbegin(); it != events.rend(); ++it) {
    const ReductionEvent& e = *it;
    switch (e.lift) {
      case Lift::Exclude:
        break;
      case Lift::Include:
        for (VertexId v : e.include) in[v] = 1;
        break;
      case Lift::Guarded: {
        const bool blocked =
            std::any_of(e.guards.begin(), e.guards.end(), [&](VertexId g) { return in[g]; });
        if (!blocked) {
          for (VertexId v : e.include) in[v] = 1;
        }
        break;
      }
      case Lift::Fold: {
        const VertexId f = *e.fold_vertex;
        if (in[f]) {
          in[f] = 0;
          for (VertexId v : e.fold_members) in[v] = 1;
        } else {
          for (VertexId v : e.include) in[v] = 1;
        }
        break;
      }
      case Lift::VShapeShift: {
        const auto [v, x, y] = e.pivots;
        if (in[y]) break;
        if (in[x]) {
          in[y] = 1;
        } else {
          in[v] = 1;
        }
        break;
      }
      case Lift::VShapeMin: {
        const auto [v, x, y] = e.pivots;
        const VertexId f = *e.fold_vertex;
        if (in[f]) {
          in[f] = 0;
          in[x] = 1;
          in[y] = 1;
        } else if (!in[x] && !in[y]) {
          in[v] = 1;
        }
        break;
      }
    }
  }
  VertexSet out;
  for (VertexId v = 0; v < original_size && v < capacity; ++v) {
    if (in[v]) out.push_back(v);
  }
  return out;
}

VertexSet reconstruct(const Kernel& kernel, std::span<const VertexId> kernel_solution) {
  std::string why;
  if (!is_independent(kernel.graph, kernel_solution, &why)) {
    throw std::invalid_argument("reconstruct: kernel solution is not independent: " + why);
  }
  return lift_solution(kernel.graph.original_size(), kernel.graph.capacity(), kernel.events,
                       kernel_solution);
}

bool any_rule_applicable(const WeightedGraph& g, const ReductionOrdering& ordering,
                         const ReduceOptions& options) {
  WeightedGraph scratch = g;
  EventSink sink;
  for (Rule rule : ordering.sequence) {
    if (rule == Rule::CWIS) {
      if (apply_cwis(scratch, sink, options)) return true;
      continue;
    }
    for (VertexId v : scratch.live_vertices()) {
      if (apply_rule_at(rule, scratch, v, sink)) return true;
    }
  }
  return false;
}

std::vector<OrderingRow> run_ordering_experiment(const WeightedGraph& g, ExperimentMode mode) {
  std::vector<ReductionOrdering> configs;
  if (mode == ExperimentMode::DisableOne) {
    const ReductionOrdering base = ordering_preset("baseline");
    for (Rule skip : base.sequence) {
      ReductionOrdering o{"baseline-without-" + std::string(rule_name(skip)), {}};
      for (Rule r : base.sequence) {
        if (r != skip) o.sequence.push_back(r);
      }
      configs.push_back(std::move(o));
    }
  } else {
    for (const auto& name : ordering_preset_names()) configs.push_back(ordering_preset(name));
  }

  std::vector<OrderingRow> rows;
  rows.reserve(configs.size());
  const double n = static_cast<double>(std::max<std::size_t>(g.live_count(), 1));
  for (auto& config : configs) {
    const auto start = std::chrono::steady_clock::now();
    Kernel k = exact_reduce(g, config);
    const auto stop = std::chrono::steady_clock::now();
    OrderingRow row;
    row.label = config.name;
    row.kernel_vertices = k.graph.live_count();
    row.kernel_edges = k.graph.live_edges();
    row.kernel_ratio = static_cast<double>(row.kernel_vertices) / n;
    row.offset = k.offset;
    row.seconds = std::chrono::duration<double>(stop - start).count();
    row.events = k.events.size();
    row.ordering = std::move(config);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace m2wis

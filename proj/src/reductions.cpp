#include "m2wis/reductions.hpp"

#include <algorithm>
#include <numeric>

#include "m2wis/maxflow.hpp"

namespace m2wis {
namespace {

constexpr std::array<std::string_view, kRuleCount> kRuleNames = {
    "neighborhood_removal", "degree_one",           "triangle",       "v_shape",
    "v_shape_min",          "isolated_clique",      "basic_single_edge",
    "extended_single_edge", "domination",           "twin",           "simplicial_transfer",
    "cwis",                 "neighborhood_folding"};

// Epoch-stamped membership marks; reset is O(1) amortized.
class Marker {
 public:
  void reset(std::size_t n) {
    if (stamp_.size() < n) stamp_.resize(n, 0);
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
  }
  void mark(VertexId v) { stamp_[v] = epoch_; }
  bool marked(VertexId v) const { return stamp_[v] == epoch_; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

Marker& marker_a() {
  thread_local Marker m;
  return m;
}
Marker& marker_b() {
  thread_local Marker m;
  return m;
}

// Applies primitive edits to the graph while recording them in an event.
class EventBuilder {
 public:
  EventBuilder(WeightedGraph& g, Rule rule, std::uint8_t rule_case, Lift lift) : g_(g) {
    event_.rule = rule;
    event_.rule_case = rule_case;
    event_.lift = lift;
  }

  void remove(VertexId v) {
    g_.remove_vertex(v);
    event_.removed.push_back(v);
    event_.edits.push_back({GraphEdit::Kind::RemoveVertex, v, kInvalidVertex, 0});
  }

  void set_weight(VertexId v, Weight w) {
    const Weight old = g_.weight(v);
    g_.set_weight(v, w);
    event_.weight_edits.emplace_back(v, old);
    event_.edits.push_back({GraphEdit::Kind::SetWeight, v, kInvalidVertex, old});
  }

  VertexId add_fold_vertex(Weight w, const std::vector<VertexId>& neighbors) {
    const VertexId id = g_.add_vertex(w);
    event_.edits.push_back({GraphEdit::Kind::AddVertex, id, kInvalidVertex, 0});
    for (VertexId u : neighbors) add_edge(id, u);
    event_.fold_vertex = id;
    return id;
  }

  void add_edge(VertexId u, VertexId v) {
    g_.add_edge(u, v);
    event_.edits.push_back({GraphEdit::Kind::AddEdge, u, v, 0});
  }

  ReductionEvent& event() { return event_; }

  bool commit(EventSink& sink) {
    sink.push_back(std::move(event_));
    return true;
  }

 private:
  WeightedGraph& g_;
  ReductionEvent event_;
};

bool neighbors_form_clique(const WeightedGraph& g, const std::vector<VertexId>& set) {
  if (set.size() < 2) return true;
  Marker& m = marker_b();
  for (std::size_t i = 0; i < set.size(); ++i) {
    m.reset(g.capacity());
    std::size_t hits = 0;
    g.for_each_neighbor(set[i], [&](VertexId u) { m.mark(u); });
    for (std::size_t j = 0; j < set.size(); ++j) {
      if (j != i && m.marked(set[j])) ++hits;
    }
    if (hits + 1 != set.size()) return false;
  }
  return true;
}

bool set_is_independent(const WeightedGraph& g, const std::vector<VertexId>& set) {
  Marker& m = marker_b();
  m.reset(g.capacity());
  for (VertexId v : set) m.mark(v);
  for (VertexId v : set) {
    bool clash = false;
    g.for_each_neighbor(v, [&](VertexId u) { clash = clash || m.marked(u); });
    if (clash) return false;
  }
  return true;
}

// Alive vertices adjacent to some member of `sources`, minus `excluded`.
std::vector<VertexId> union_of_neighborhoods(const WeightedGraph& g,
                                             const std::vector<VertexId>& sources,
                                             const std::vector<VertexId>& excluded) {
  Marker& m = marker_b();
  m.reset(g.capacity());
  for (VertexId v : excluded) m.mark(v);
  std::vector<VertexId> out;
  for (VertexId s : sources) {
    g.for_each_neighbor(s, [&](VertexId u) {
      if (!m.marked(u)) {
        m.mark(u);
        out.push_back(u);
      }
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

Weight weight_of(const WeightedGraph& g, const std::vector<VertexId>& set) {
  return set_weight(g, set);
}

// Degree-two helper: neighbors ordered so that w(x) <= w(y), ties by id.
std::pair<VertexId, VertexId> ordered_pair(const WeightedGraph& g, VertexId v) {
  VertexId x = kInvalidVertex;
  VertexId y = kInvalidVertex;
  g.for_each_neighbor(v, [&](VertexId u) { (x == kInvalidVertex ? x : y) = u; });
  if (g.weight(x) > g.weight(y) || (g.weight(x) == g.weight(y) && x > y)) std::swap(x, y);
  return {x, y};
}

}  // namespace

std::string_view rule_name(Rule rule) { return kRuleNames[static_cast<std::size_t>(rule)]; }

std::optional<Rule> rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kRuleCount; ++i) {
    if (kRuleNames[i] == name) return static_cast<Rule>(i);
  }
  return std::nullopt;
}

void undo_event(WeightedGraph& g, const ReductionEvent& event) {
  for (auto it = event.edits.rbegin(); it != event.edits.rend(); ++it) {
    switch (it->kind) {
      case GraphEdit::Kind::RemoveVertex:
        g.restore_vertex(it->a);
        break;
      case GraphEdit::Kind::SetWeight:
        g.set_weight(it->a, it->old_weight);
        break;
      case GraphEdit::Kind::AddVertex:
        if (g.capacity() == 0 || g.capacity() - 1 != it->a) {
          throw GraphError("undo_event: fold vertex is not the newest vertex");
        }
        g.pop_vertex();
        break;
      case GraphEdit::Kind::AddEdge:
        g.pop_edge(it->a, it->b);
        break;
    }
  }
}

bool apply_neighborhood_removal(WeightedGraph& g, VertexId v, EventSink& events) {
  if (!g.alive(v) || g.weight(v) < g.neighborhood_weight(v)) return false;
  const auto nbrs = g.neighbors(v);
  EventBuilder b(g, Rule::NeighborhoodRemoval, 0, Lift::Include);
  b.event().offset_delta = g.weight(v);
  b.event().include = {v};
  b.remove(v);
  for (VertexId u : nbrs) b.remove(u);
  return b.commit(events);
}

bool apply_degree_one(WeightedGraph& g, VertexId v, EventSink& events) {
  if (!g.alive(v) || g.degree(v) != 1) return false;
  const VertexId u = g.neighbors(v).front();
  const Weight wv = g.weight(v);
  if (wv >= g.weight(u)) {
    EventBuilder b(g, Rule::DegreeOne, 1, Lift::Include);
    b.event().offset_delta = wv;
    b.event().include = {v};
    b.remove(v);
    b.remove(u);
    return b.commit(events);
  }
  EventBuilder b(g, Rule::DegreeOne, 2, Lift::Guarded);
  b.event().offset_delta = wv;
  b.event().include = {v};
  b.event().guards = {u};
  b.remove(v);
  b.set_weight(u, g.weight(u) - wv);
  return b.commit(events);
}

bool apply_triangle(WeightedGraph& g, VertexId v, EventSink& events) {
  if (!g.alive(v) || g.degree(v) != 2) return false;
  const auto [x, y] = ordered_pair(g, v);
  if (!g.has_edge(x, y)) return false;
  const Weight wv = g.weight(v);
  if (wv >= g.weight(y)) {
    EventBuilder b(g, Rule::Triangle, 1, Lift::Include);
    b.event().offset_delta = wv;
    b.event().include = {v};
    b.remove(v);
    b.remove(x);
    b.remove(y);
    return b.commit(events);
  }
  if (wv >= g.weight(x)) {
    EventBuilder b(g, Rule::Triangle, 2, Lift::Guarded);
    b.event().offset_delta = wv;
    b.event().include = {v};
    b.event().guards = {y};
    b.remove(v);
    b.remove(x);
    b.set_weight(y, g.weight(y) - wv);
    return b.commit(events);
  }
  EventBuilder b(g, Rule::Triangle, 3, Lift::Guarded);
  b.event().offset_delta = wv;
  b.event().include = {v};
  b.event().guards = {x, y};
  b.remove(v);
  b.set_weight(x, g.weight(x) - wv);
  b.set_weight(y, g.weight(y) - wv);
  return b.commit(events);
}

bool apply_v_shape(WeightedGraph& g, VertexId v, EventSink& events) {
  if (!g.alive(v) || g.degree(v) != 2) return false;
  const auto [x, y] = ordered_pair(g, v);
  if (g.has_edge(x, y)) return false;
  const Weight wv = g.weight(v);
  const Weight wx = g.weight(x);
  const Weight wy = g.weight(y);
  if (wv >= wy) {
    if (wv >= wx + wy) {
      EventBuilder b(g, Rule::VShape, 1, Lift::Include);
      b.event().offset_delta = wv;
      b.event().include = {v};
      b.remove(v);
      b.remove(x);
      b.remove(y);
      return b.commit(events);
    }
    const auto outer = union_of_neighborhoods(g, {x, y}, {v, x, y});
    EventBuilder b(g, Rule::VShape, 2, Lift::Fold);
    b.event().offset_delta = wv;
    b.event().include = {v};
    b.event().fold_members = {x, y};
    b.remove(v);
    b.remove(x);
    b.remove(y);
    b.add_fold_vertex(wx + wy - wv, outer);
    return b.commit(events);
  }
  if (wv < wx) return false;  // handled by apply_v_shape_min

  EventBuilder b(g, Rule::VShape, 3, Lift::VShapeShift);
  b.event().offset_delta = wv;
  b.event().pivots = {v, x, y};
  b.remove(v);
  Marker& m = marker_a();
  m.reset(g.capacity());
  g.for_each_neighbor(x, [&](VertexId u) { m.mark(u); });
  for (VertexId z : g.neighbors(y)) {
    if (z != x && !m.marked(z)) b.add_edge(x, z);
  }
  b.set_weight(y, wy - wv);
  return b.commit(events);
}

bool apply_v_shape_min(WeightedGraph& g, VertexId v, EventSink& events) {
  if (!g.alive(v) || g.degree(v) != 2) return false;
  const auto [x, y] = ordered_pair(g, v);
  if (g.has_edge(x, y)) return false;
  const Weight wv = g.weight(v);
  // A zero-weight v would leave the graph unchanged up to relabeling.
  if (wv <= 0 || wv >= g.weight(x)) return false;

  const auto outer = union_of_neighborhoods(g, {x, y}, {v, x, y});
  EventBuilder b(g, Rule::VShapeMin, 0, Lift::VShapeMin);
  b.event().offset_delta = wv;
  b.event().pivots = {v, x, y};
  b.remove(v);
  b.set_weight(x, g.weight(x) - wv);
  b.set_weight(y, g.weight(y) - wv);
  b.add_fold_vertex(wv, outer);
  return b.commit(events);
}

bool apply_isolated_clique(WeightedGraph& g, VertexId v, EventSink& events) {
  if (!g.alive(v)) return false;
  const auto nbrs = g.neighbors(v);
  for (VertexId u : nbrs) {
    if (g.weight(u) > g.weight(v)) return false;
  }
  if (!neighbors_form_clique(g, nbrs)) return false;
  EventBuilder b(g, Rule::IsolatedClique, 0, Lift::Include);
  b.event().offset_delta = g.weight(v);
  b.event().include = {v};
  b.remove(v);
  for (VertexId u : nbrs) b.remove(u);
  return b.commit(events);
}

bool apply_basic_single_edge(WeightedGraph& g, VertexId u, VertexId v, EventSink& events) {
  if (u == v || !g.has_edge(u, v)) return false;
  Marker& m = marker_a();
  m.reset(g.capacity());
  m.mark(v);
  g.for_each_neighbor(v, [&](VertexId z) { m.mark(z); });
  Weight outside = 0;
  g.for_each_neighbor(u, [&](VertexId z) {
    if (!m.marked(z)) outside += g.weight(z);
  });
  if (g.weight(v) + outside > g.weight(u)) return false;
  EventBuilder b(g, Rule::BasicSingleEdge, 0, Lift::Exclude);
  b.remove(v);
  return b.commit(events);
}

bool apply_extended_single_edge(WeightedGraph& g, VertexId u, VertexId v, EventSink& events) {
  if (u == v || !g.has_edge(u, v)) return false;
  if (g.weight(v) < g.neighborhood_weight(v) - g.weight(u)) return false;
  Marker& m = marker_a();
  m.reset(g.capacity());
  g.for_each_neighbor(u, [&](VertexId z) { m.mark(z); });
  std::vector<VertexId> common;
  g.for_each_neighbor(v, [&](VertexId z) {
    if (m.marked(z)) common.push_back(z);
  });
  if (common.empty()) return false;
  EventBuilder b(g, Rule::ExtendedSingleEdge, 0, Lift::Exclude);
  for (VertexId z : common) b.remove(z);
  return b.commit(events);
}

bool apply_domination(WeightedGraph& g, VertexId u, VertexId v, EventSink& events) {
  if (u == v || !g.has_edge(u, v)) return false;
  if (g.weight(u) > g.weight(v) || g.degree(u) < g.degree(v)) return false;
  Marker& m = marker_a();
  m.reset(g.capacity());
  m.mark(u);
  g.for_each_neighbor(u, [&](VertexId z) { m.mark(z); });
  bool covers = true;
  g.for_each_neighbor(v, [&](VertexId z) { covers = covers && m.marked(z); });
  if (!covers) return false;
  VertexId victim = u;
  if (g.weight(u) == g.weight(v) && g.degree(u) == g.degree(v)) victim = std::min(u, v);
  EventBuilder b(g, Rule::Domination, 0, Lift::Exclude);
  b.remove(victim);
  return b.commit(events);
}

bool apply_twin(WeightedGraph& g, VertexId u, VertexId v, EventSink& events) {
  if (u == v || !g.alive(u) || !g.alive(v) || g.degree(u) != 3 || g.degree(v) != 3) return false;
  auto nu = g.neighbors(u);
  auto nv = g.neighbors(v);
  std::sort(nu.begin(), nu.end());
  std::sort(nv.begin(), nv.end());
  if (nu != nv || !set_is_independent(g, nu)) return false;

  const Weight pair_weight = g.weight(u) + g.weight(v);
  const Weight outer_weight = weight_of(g, nu);
  const Weight lightest =
      std::min({g.weight(nu[0]), g.weight(nu[1]), g.weight(nu[2])});
  if (pair_weight >= outer_weight) {
    EventBuilder b(g, Rule::Twin, 1, Lift::Include);
    b.event().offset_delta = pair_weight;
    b.event().include = {std::min(u, v), std::max(u, v)};
    b.remove(u);
    b.remove(v);
    for (VertexId p : nu) b.remove(p);
    return b.commit(events);
  }
  if (pair_weight <= outer_weight - lightest) return false;
  const auto outer = union_of_neighborhoods(g, nu, {u, v, nu[0], nu[1], nu[2]});
  EventBuilder b(g, Rule::Twin, 2, Lift::Fold);
  b.event().offset_delta = pair_weight;
  b.event().include = {std::min(u, v), std::max(u, v)};
  b.event().fold_members = nu;
  b.remove(u);
  b.remove(v);
  for (VertexId p : nu) b.remove(p);
  b.add_fold_vertex(outer_weight - pair_weight, outer);
  return b.commit(events);
}

bool apply_simplicial_transfer(WeightedGraph& g, VertexId v, EventSink& events) {
  if (!g.alive(v)) return false;
  const auto nbrs = g.neighbors(v);
  if (!neighbors_form_clique(g, nbrs)) return false;
  const Weight wv = g.weight(v);
  std::vector<VertexId> light;
  std::vector<VertexId> heavy;
  for (VertexId u : nbrs) (g.weight(u) <= wv ? light : heavy).push_back(u);

  EventBuilder b(g, Rule::SimplicialTransfer, 0, Lift::Guarded);
  b.event().offset_delta = wv;
  b.event().include = {v};
  b.event().guards = heavy;
  b.remove(v);
  for (VertexId u : light) b.remove(u);
  for (VertexId x : heavy) b.set_weight(x, g.weight(x) - wv);
  return b.commit(events);
}

CriticalSet critical_weighted_independent_set(const WeightedGraph& g) {
  const auto live = g.live_vertices();
  const int n = static_cast<int>(live.size());
  std::vector<int> index(g.capacity(), -1);
  for (int i = 0; i < n; ++i) index[live[i]] = i;

  const int source = 2 * n;
  const int sink = 2 * n + 1;
  MaxFlow flow(2 * n + 2);
  const MaxFlow::Capacity unbounded = g.total_live_weight() + 1;
  for (int i = 0; i < n; ++i) {
    flow.add_arc(source, i, g.weight(live[i]));
    flow.add_arc(n + i, sink, g.weight(live[i]));
    g.for_each_neighbor(live[i], [&](VertexId u) { flow.add_arc(i, n + index[u], unbounded); });
  }
  flow.solve(source, sink);
  const auto& side = flow.source_side();

  // Left copies on the source side form a set X maximizing w(X) - w(N(X));
  // the right copies on the source side are exactly N(X). X \ N(X) is
  // independent and at least as good.
  CriticalSet out;
  for (int i = 0; i < n; ++i) {
    if (side[i] && !side[n + i]) out.members.push_back(live[i]);
  }
  Weight inside = 0;
  for (VertexId v : out.members) inside += g.weight(v);
  const auto boundary = union_of_neighborhoods(g, out.members, {});
  out.value = inside - weight_of(g, boundary);
  return out;
}

bool apply_cwis(WeightedGraph& g, EventSink& events, const ReduceOptions& options) {
  if (g.empty()) return false;
  CriticalSet critical = critical_weighted_independent_set(g);
  if (critical.members.empty()) return false;
  if (critical.value < 0 || (critical.value == 0 && !options.cwis_allow_zero)) return false;
  if (!set_is_independent(g, critical.members)) return false;
  const auto boundary = union_of_neighborhoods(g, critical.members, {});
  EventBuilder b(g, Rule::CWIS, 0, Lift::Include);
  b.event().offset_delta = weight_of(g, critical.members);
  b.event().include = critical.members;
  for (VertexId v : critical.members) b.remove(v);
  for (VertexId u : boundary) b.remove(u);
  return b.commit(events);
}

bool apply_neighborhood_folding(WeightedGraph& g, VertexId v, EventSink& events) {
  if (!g.alive(v) || g.degree(v) == 0) return false;
  auto nbrs = g.neighbors(v);
  const Weight total = weight_of(g, nbrs);
  const Weight wv = g.weight(v);
  if (total <= wv) return false;
  Weight lightest = g.weight(nbrs.front());
  for (VertexId u : nbrs) lightest = std::min(lightest, g.weight(u));
  if (wv <= total - lightest) return false;
  if (!set_is_independent(g, nbrs)) return false;

  std::sort(nbrs.begin(), nbrs.end());
  std::vector<VertexId> closed = nbrs;
  closed.push_back(v);
  const auto outer = union_of_neighborhoods(g, nbrs, closed);
  EventBuilder b(g, Rule::NeighborhoodFolding, 0, Lift::Fold);
  b.event().offset_delta = wv;
  b.event().include = {v};
  b.event().fold_members = nbrs;
  b.remove(v);
  for (VertexId u : nbrs) b.remove(u);
  b.add_fold_vertex(total - wv, outer);
  return b.commit(events);
}

bool apply_rule_at(Rule rule, WeightedGraph& g, VertexId v, EventSink& events) {
  if (!g.alive(v)) return false;
  switch (rule) {
    case Rule::NeighborhoodRemoval:
      return apply_neighborhood_removal(g, v, events);
    case Rule::DegreeOne:
      return apply_degree_one(g, v, events);
    case Rule::Triangle:
      return apply_triangle(g, v, events);
    case Rule::VShape:
      return apply_v_shape(g, v, events);
    case Rule::VShapeMin:
      return apply_v_shape_min(g, v, events);
    case Rule::IsolatedClique:
      return apply_isolated_clique(g, v, events);
    case Rule::BasicSingleEdge:
      for (VertexId w : g.neighbors(v)) {
        if (apply_basic_single_edge(g, v, w, events)) return true;
        if (apply_basic_single_edge(g, w, v, events)) return true;
      }
      return false;
    case Rule::ExtendedSingleEdge:
      for (VertexId w : g.neighbors(v)) {
        if (apply_extended_single_edge(g, v, w, events)) return true;
        if (apply_extended_single_edge(g, w, v, events)) return true;
      }
      return false;
    case Rule::Domination:
      for (VertexId w : g.neighbors(v)) {
        if (apply_domination(g, w, v, events)) return true;
        if (apply_domination(g, v, w, events)) return true;
      }
      return false;
    case Rule::Twin: {
      if (g.degree(v) != 3) return false;
      const auto nbrs = g.neighbors(v);
      if (!set_is_independent(g, nbrs)) return false;
      for (VertexId w : g.neighbors(nbrs.front())) {
        if (w != v && g.degree(w) == 3 && apply_twin(g, v, w, events)) return true;
      }
      return false;
    }
    case Rule::SimplicialTransfer:
      return apply_simplicial_transfer(g, v, events);
    case Rule::CWIS:
      return apply_cwis(g, events);
    case Rule::NeighborhoodFolding:
      return apply_neighborhood_folding(g, v, events);
  }
  return false;
}

}  // namespace m2wis

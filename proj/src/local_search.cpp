#include "m2wis/local_search.hpp"

#include <algorithm>
#include <stdexcept>

namespace m2wis {

Individual make_individual(const WeightedGraph& g, std::span<const VertexId> members) {
  Individual ind;
  ind.bits = Bitset::from_set(g.capacity(), members);
  ind.weight = set_weight(g, members);
  ind.generation = g.generation();
  return ind;
}

SearchState::SearchState(const WeightedGraph& g)
    : g_(&g),
      live_(g.live_vertices()),
      in_(g.capacity(), 0),
      tight_(g.capacity(), 0),
      free_pos_(g.capacity(), 0),
      changed_(g.capacity(), 0) {
  free_.reserve(live_.size());
  for (VertexId v : live_) free_add(v);
}

SearchState::SearchState(const WeightedGraph& g, const Individual& start) : SearchState(g) {
  if (start.bits.size() != g.capacity()) {
    throw std::invalid_argument("SearchState: individual built for a different graph");
  }
  start.bits.for_each([&](VertexId v) { force_insert(v); });
  drain_changes();
}

SearchState::SearchState(const WeightedGraph& g, std::span<const VertexId> start)
    : SearchState(g) {
  for (VertexId v : start) force_insert(v);
  drain_changes();
}

void SearchState::free_add(VertexId v) {
  free_pos_[v] = static_cast<std::uint32_t>(free_.size());
  free_.push_back(v);
}

void SearchState::free_drop(VertexId v) {
  const std::uint32_t pos = free_pos_[v];
  const VertexId last = free_.back();
  free_[pos] = last;
  free_pos_[last] = pos;
  free_.pop_back();
}

void SearchState::note_change(VertexId v) {
  if (!changed_[v]) {
    changed_[v] = 1;
    changes_.push_back(v);
  }
}

Weight SearchState::solution_neighbor_weight(VertexId v) const {
  Weight sum = 0;
  if (tight_[v] == 0) return 0;
  g_->for_each_neighbor(v, [&](VertexId u) {
    if (in_[u]) sum += g_->weight(u);
  });
  return sum;
}

void SearchState::insert(VertexId v) {
  if (!g_->alive(v) || !is_free(v)) throw std::logic_error("insert: vertex is not free");
  free_drop(v);
  in_[v] = 1;
  weight_ += g_->weight(v);
  ++size_;
  g_->for_each_neighbor(v, [&](VertexId u) {
    if (tight_[u]++ == 0) free_drop(u);
  });
  note_change(v);
}

void SearchState::remove(VertexId v) {
  if (!in_[v]) throw std::logic_error("remove: vertex is not in the solution");
  in_[v] = 0;
  weight_ -= g_->weight(v);
  --size_;
  g_->for_each_neighbor(v, [&](VertexId u) {
    if (--tight_[u] == 0) free_add(u);
  });
  if (tight_[v] == 0) free_add(v);
  note_change(v);
}

void SearchState::force_insert(VertexId v) {
  if (in_[v]) return;
  if (tight_[v] > 0) {
    std::vector<VertexId> evict;
    g_->for_each_neighbor(v, [&](VertexId u) {
      if (in_[u]) evict.push_back(u);
    });
    for (VertexId u : evict) remove(u);
  }
  insert(v);
}

std::vector<VertexId> SearchState::drain_changes() {
  std::vector<VertexId> out;
  out.swap(changes_);
  for (VertexId v : out) changed_[v] = 0;
  return out;
}

VertexSet SearchState::solution() const {
  VertexSet out;
  out.reserve(size_);
  for (VertexId v : live_) {
    if (in_[v]) out.push_back(v);
  }
  return out;
}

Individual SearchState::to_individual() const {
  Individual ind;
  ind.bits = Bitset(g_->capacity());
  for (VertexId v : live_) {
    if (in_[v]) ind.bits.set(v);
  }
  ind.weight = weight_;
  ind.generation = g_->generation();
  return ind;
}

void SearchState::audit() const {
  Weight w = 0;
  std::size_t free_count = 0;
  for (VertexId v : live_) {
    std::uint32_t t = 0;
    g_->for_each_neighbor(v, [&](VertexId u) { t += in_[u]; });
    if (t != tight_[v]) throw std::logic_error("audit: tightness mismatch at " + std::to_string(v));
    if (in_[v]) {
      if (t != 0) throw std::logic_error("audit: solution not independent at " + std::to_string(v));
      w += g_->weight(v);
    }
    const bool listed = free_pos_[v] < free_.size() && free_[free_pos_[v]] == v;
    if (is_free(v) != listed) throw std::logic_error("audit: free list mismatch at " + std::to_string(v));
    free_count += listed;
  }
  if (free_count != free_.size()) throw std::logic_error("audit: free list has stray entries");
  if (w != weight_) throw std::logic_error("audit: cached weight is stale");
}

void maximize_greedy(SearchState& state, GreedyOrder order, Rng* rng) {
  std::vector<VertexId> pool(state.free_vertices().begin(), state.free_vertices().end());
  if (order == GreedyOrder::ByWeight) {
    const WeightedGraph& g = state.graph();
    std::sort(pool.begin(), pool.end(), [&](VertexId a, VertexId b) {
      return g.weight(a) != g.weight(b) ? g.weight(a) > g.weight(b) : a < b;
    });
  } else {
    if (rng == nullptr) throw std::invalid_argument("maximize_greedy: random order needs an rng");
    std::sort(pool.begin(), pool.end());
    std::shuffle(pool.begin(), pool.end(), *rng);
  }
  // Insertions never free anything, so one pass over the snapshot suffices.
  for (VertexId v : pool) {
    if (state.is_free(v)) state.insert(v);
  }
}

bool omega_one_swap(SearchState& state, VertexId v) {
  if (state.in_solution(v) || !state.graph().alive(v)) return false;
  if (state.graph().weight(v) <= state.solution_neighbor_weight(v)) return false;
  state.force_insert(v);
  return true;
}

bool one_two_swap(SearchState& state, VertexId v) {
  if (!state.in_solution(v)) return false;
  const WeightedGraph& g = state.graph();
  std::vector<VertexId> cand;
  g.for_each_neighbor(v, [&](VertexId u) {
    if (state.tightness(u) == 1) cand.push_back(u);
  });
  if (cand.size() < 2) return false;
  std::sort(cand.begin(), cand.end(), [&](VertexId a, VertexId b) {
    return g.weight(a) != g.weight(b) ? g.weight(a) > g.weight(b) : a < b;
  });

  thread_local std::vector<std::uint32_t> stamp;
  thread_local std::uint32_t epoch = 0;
  if (stamp.size() < g.capacity()) stamp.assign(g.capacity(), 0);
  if (++epoch == 0) {
    std::fill(stamp.begin(), stamp.end(), 0);
    epoch = 1;
  }

  Weight best = g.weight(v);
  VertexId bx = kInvalidVertex, by = kInvalidVertex;
  for (std::size_t i = 0; i + 1 < cand.size(); ++i) {
    const VertexId x = cand[i];
    if (g.weight(x) + g.weight(cand[i + 1]) <= best) break;
    ++epoch;
    g.for_each_neighbor(x, [&](VertexId u) { stamp[u] = epoch; });
    for (std::size_t j = i + 1; j < cand.size(); ++j) {
      const VertexId y = cand[j];
      if (g.weight(x) + g.weight(y) <= best) break;
      if (stamp[y] != epoch) {
        best = g.weight(x) + g.weight(y);
        bx = x;
        by = y;
        break;
      }
    }
  }
  if (bx == kInvalidVertex) return false;
  state.remove(v);
  state.insert(bx);
  state.insert(by);
  return true;
}

namespace {

class WorkQueue {
 public:
  explicit WorkQueue(std::size_t capacity) : queued_(capacity, 0) {}
  void push(VertexId v) {
    if (!queued_[v]) {
      queued_[v] = 1;
      items_.push_back(v);
    }
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

}  // namespace

std::size_t vnd(SearchState& state, std::size_t max_iterations, Rng& rng) {
  if (max_iterations == 0) return 0;
  const WeightedGraph& g = state.graph();
  WorkQueue omega(g.capacity());
  WorkQueue pairs(g.capacity());
  std::vector<VertexId> order(state.live().begin(), state.live().end());
  std::shuffle(order.begin(), order.end(), rng);
  for (VertexId v : order) {
    omega.push(v);
    pairs.push(v);
  }
  state.drain_changes();

  // (w,1) status depends on the closed neighborhood, (1,2) status on
  // tightness of neighbors, hence one and two hops.
  auto requeue = [&] {
    for (VertexId c : state.drain_changes()) {
      omega.push(c);
      pairs.push(c);
      g.for_each_neighbor(c, [&](VertexId u) {
        omega.push(u);
        pairs.push(u);
        g.for_each_neighbor(u, [&](VertexId w) {
          if (state.in_solution(w)) pairs.push(w);
        });
      });
    }
  };

  std::size_t attempts = 0;
  VertexId v = kInvalidVertex;
  bool improved = true;
  while (improved && attempts < max_iterations) {
    while (attempts < max_iterations && omega.pop(v)) {
      if (state.in_solution(v)) continue;
      ++attempts;
      if (omega_one_swap(state, v)) requeue();
    }
    improved = false;
    while (!improved && attempts < max_iterations && pairs.pop(v)) {
      if (!state.in_solution(v)) continue;
      ++attempts;
      if (one_two_swap(state, v)) {
        requeue();
        improved = true;
      }
    }
  }
  // Without a cap hit only zero-weight vertices can still be free here.
  maximize_greedy(state, GreedyOrder::ByWeight);
  return attempts;
}

void perturb(SearchState& state, std::size_t strength, Rng& rng) {
  if (strength == 0) throw std::invalid_argument("perturb: strength must be at least 1");
  std::vector<VertexId> outside;
  for (VertexId v : state.live()) {
    if (!state.in_solution(v)) outside.push_back(v);
  }
  const std::size_t picks = std::min(strength, outside.size());
  for (std::size_t i = 0; i < picks; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, outside.size() - 1);
    std::swap(outside[i], outside[pick(rng)]);
    state.force_insert(outside[i]);
  }
  maximize_greedy(state, GreedyOrder::ByWeight);
}

void PerturbationSchedule::record(bool improved) {
  if (improved) {
    strength_ = 1;
    failures_ = 0;
    return;
  }
  if (++failures_ >= patience_) {
    strength_ = std::min<std::size_t>(strength_ * 2, 4);
    failures_ = 0;
  }
}

void iterated_local_search(SearchState& state, std::size_t max_iterations, std::size_t rounds,
                           Rng& rng) {
  maximize_greedy(state, GreedyOrder::ByWeight);
  vnd(state, max_iterations, rng);
  if (state.live().empty()) return;
  SearchState best = state;
  PerturbationSchedule schedule;
  for (std::size_t r = 0; r < rounds; ++r) {
    perturb(state, schedule.strength(), rng);
    vnd(state, max_iterations, rng);
    const bool improved = state.weight() > best.weight();
    if (state.weight() >= best.weight()) {
      best = state;
    } else {
      state = best;
    }
    schedule.record(improved);
  }
  state = best;
  state.drain_changes();
}

}  // namespace m2wis

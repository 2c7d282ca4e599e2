#include "m2wis/partitioner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <stdexcept>
#include <string>

namespace m2wis {
namespace {

constexpr int kTrials = 4;
constexpr int kRefinePasses = 4;
constexpr std::uint32_t kFar = std::numeric_limits<std::uint32_t>::max();

// BFS distances from `sources` into `dist`; unreached vertices keep kFar.
void bfs_distances(const WeightedGraph& g, const std::vector<VertexId>& sources,
                   std::vector<std::uint32_t>& dist) {
  std::deque<VertexId> queue;
  for (VertexId s : sources) {
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    g.for_each_neighbor(v, [&](VertexId u) {
      if (dist[u] == kFar) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    });
  }
}

// Farthest live vertex from the sources, lowest id among ties. Vertices in
// other components count as farthest.
VertexId farthest(const WeightedGraph& g, const std::vector<VertexId>& live,
                  const std::vector<VertexId>& sources) {
  std::vector<std::uint32_t> dist(g.capacity(), kFar);
  bfs_distances(g, sources, dist);
  VertexId best = kInvalidVertex;
  std::uint32_t best_d = 0;
  for (VertexId v : live) {
    if (dist[v] == 0) continue;
    if (best == kInvalidVertex || dist[v] > best_d) {
      best = v;
      best_d = dist[v];
    }
  }
  return best;
}

std::vector<VertexId> choose_seeds(const WeightedGraph& g, const std::vector<VertexId>& live,
                                   std::uint32_t k, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, live.size() - 1);
  const VertexId start = live[pick(rng)];
  // Pseudo-peripheral first seed, then farthest-point insertion.
  VertexId first = farthest(g, live, {start});
  if (first == kInvalidVertex) first = start;
  std::vector<VertexId> seeds{first};
  while (seeds.size() < k) {
    const VertexId next = farthest(g, live, seeds);
    seeds.push_back(next);
  }
  return seeds;
}

struct Growth {
  std::vector<BlockId> block_of;
  std::vector<std::size_t> size;
};

Growth grow_regions(const WeightedGraph& g, const std::vector<VertexId>& live,
                    const std::vector<VertexId>& seeds, std::size_t cap) {
  const auto k = static_cast<std::uint32_t>(seeds.size());
  Growth r{std::vector<BlockId>(g.capacity(), kNoBlock), std::vector<std::size_t>(k, 0)};
  std::deque<VertexId> queue;
  auto assign = [&](VertexId v, BlockId b) {
    r.block_of[v] = b;
    ++r.size[b];
    queue.push_back(v);
  };
  auto drain = [&] {
    std::vector<VertexId> nbrs;
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      const BlockId b = r.block_of[v];
      nbrs = g.neighbors(v);
      std::sort(nbrs.begin(), nbrs.end());
      for (VertexId u : nbrs) {
        if (r.size[b] >= cap) break;
        if (r.block_of[u] == kNoBlock) assign(u, b);
      }
    }
  };
  for (BlockId b = 0; b < k; ++b) assign(seeds[b], b);
  drain();
  // Leftovers: cut off by full blocks or in unseeded components.
  for (VertexId v : live) {
    if (r.block_of[v] != kNoBlock) continue;
    std::vector<std::size_t> links(k, 0);
    g.for_each_neighbor(v, [&](VertexId u) {
      if (r.block_of[u] != kNoBlock) ++links[r.block_of[u]];
    });
    BlockId target = kNoBlock;
    for (BlockId b = 0; b < k; ++b) {
      if (r.size[b] >= cap) continue;
      if (target == kNoBlock || links[b] > links[target] ||
          (links[b] == links[target] && r.size[b] < r.size[target])) {
        target = b;
      }
    }
    assign(v, target);
    drain();
  }
  return r;
}

void refine(const WeightedGraph& g, const std::vector<VertexId>& live, Growth& r,
            std::size_t cap) {
  const auto k = static_cast<std::uint32_t>(r.size.size());
  std::vector<std::size_t> links(k, 0);
  std::vector<BlockId> touched;
  for (int pass = 0; pass < kRefinePasses; ++pass) {
    bool moved = false;
    for (VertexId v : live) {
      const BlockId own = r.block_of[v];
      if (r.size[own] <= 1) continue;
      touched.clear();
      g.for_each_neighbor(v, [&](VertexId u) {
        const BlockId b = r.block_of[u];
        if (links[b]++ == 0) touched.push_back(b);
      });
      BlockId target = own;
      std::size_t best = links[own];
      for (BlockId b : touched) {
        if (b != own && r.size[b] < cap && links[b] > best) {
          target = b;
          best = links[b];
        }
      }
      for (BlockId b : touched) links[b] = 0;
      if (target != own) {
        r.block_of[v] = target;
        --r.size[own];
        ++r.size[target];
        moved = true;
      }
    }
    if (!moved) break;
  }
}

std::vector<std::pair<VertexId, VertexId>> cross_edges(const WeightedGraph& g,
                                                       const std::vector<VertexId>& live,
                                                       const std::vector<BlockId>& block_of) {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (VertexId v : live) {
    if (block_of[v] == kSeparatorBlock) continue;
    g.for_each_neighbor(v, [&](VertexId u) {
      if (v < u && block_of[u] != kSeparatorBlock && block_of[u] != block_of[v]) {
        out.emplace_back(v, u);
      }
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

VertexSet Partition::separator() const {
  VertexSet out;
  for (VertexId v = 0; v < block_of.size(); ++v) {
    if (block_of[v] == kSeparatorBlock) out.push_back(v);
  }
  return out;
}

VertexSet Partition::block(BlockId b) const {
  VertexSet out;
  for (VertexId v = 0; v < block_of.size(); ++v) {
    if (block_of[v] == b) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> Partition::block_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (BlockId b : block_of) {
    if (b < k) ++sizes[b];
  }
  return sizes;
}

std::size_t block_limit(std::size_t n, std::uint32_t k, double epsilon) {
  const std::size_t even = (n + k - 1) / k;
  return static_cast<std::size_t>(std::floor((1.0 + epsilon) * static_cast<double>(even) + 1e-9));
}

Partition edge_partition(const WeightedGraph& g, std::uint32_t k, double epsilon, Rng& rng) {
  const std::size_t n = g.live_count();
  if (k < 2) throw std::invalid_argument("edge_partition: k must be at least 2");
  if (k > n) {
    throw std::invalid_argument("edge_partition: k=" + std::to_string(k) + " exceeds " +
                                std::to_string(n) + " live vertices");
  }
  if (epsilon < 0) throw std::invalid_argument("edge_partition: epsilon must be non-negative");
  const std::vector<VertexId> live = g.live_vertices();
  const std::size_t cap = block_limit(n, k, epsilon);

  Partition best;
  bool have = false;
  for (int trial = 0; trial < kTrials; ++trial) {
    Growth r = grow_regions(g, live, choose_seeds(g, live, k, rng), cap);
    refine(g, live, r, cap);
    auto cut = cross_edges(g, live, r.block_of);
    if (!have || cut.size() < best.cut_edges.size()) {
      best.block_of = std::move(r.block_of);
      best.cut_edges = std::move(cut);
      have = true;
    }
    if (best.cut_edges.empty()) break;
  }
  best.k = k;
  best.epsilon = epsilon;
  best.generation = g.generation();
  return best;
}

Partition separator_from(const WeightedGraph& g, const Partition& edge_part) {
  Partition p = edge_part;
  std::vector<std::uint32_t> cut_degree(g.capacity(), 0);
  for (const auto& [a, b] : p.cut_edges) {
    ++cut_degree[a];
    ++cut_degree[b];
  }
  for (const auto& [a, b] : p.cut_edges) {
    if (p.block_of[a] == kSeparatorBlock || p.block_of[b] == kSeparatorBlock) continue;
    VertexId pick;
    if (cut_degree[a] != cut_degree[b]) {
      pick = cut_degree[a] > cut_degree[b] ? a : b;
    } else if (g.degree(a) != g.degree(b)) {
      pick = g.degree(a) > g.degree(b) ? a : b;
    } else {
      pick = std::min(a, b);
    }
    const BlockId home = p.block_of[pick];
    p.block_of[pick] = kSeparatorBlock;
    g.for_each_neighbor(pick, [&](VertexId u) {
      const BlockId bu = p.block_of[u];
      if (bu != kSeparatorBlock && bu != kNoBlock && bu != home) --cut_degree[u];
    });
    cut_degree[pick] = 0;
  }
  p.cut_edges.clear();
  p.has_separator = true;
  return p;
}

Partition vertex_separator(const WeightedGraph& g, std::uint32_t k, double epsilon, Rng& rng) {
  return separator_from(g, edge_partition(g, k, epsilon, rng));
}

void validate_partition(const WeightedGraph& g, const Partition& p) {
  if (p.block_of.size() != g.capacity()) throw std::logic_error("partition: size mismatch");
  if (p.generation != g.generation()) throw std::logic_error("partition: stale generation");
  std::vector<std::size_t> sizes(p.k, 0);
  std::size_t n = 0;
  for (VertexId v = 0; v < g.capacity(); ++v) {
    const BlockId b = p.block_of[v];
    if (!g.alive(v)) {
      if (b != kNoBlock) throw std::logic_error("partition: dead vertex labelled");
      continue;
    }
    ++n;
    if (b == kSeparatorBlock) {
      if (!p.has_separator) throw std::logic_error("partition: separator label in edge mode");
      continue;
    }
    if (b >= p.k) throw std::logic_error("partition: vertex " + std::to_string(v) + " unassigned");
    ++sizes[b];
  }
  const std::size_t cap = block_limit(n, p.k, p.epsilon);
  for (BlockId b = 0; b < p.k; ++b) {
    if (sizes[b] > cap) {
      throw std::logic_error("partition: block " + std::to_string(b) + " has " +
                             std::to_string(sizes[b]) + " > " + std::to_string(cap) + " vertices");
    }
  }
  const auto cross = cross_edges(g, g.live_vertices(), p.block_of);
  if (p.has_separator && !cross.empty()) {
    throw std::logic_error("partition: edge " + std::to_string(cross.front().first) + "-" +
                           std::to_string(cross.front().second) + " crosses the separator");
  }
  if (!p.has_separator && cross != p.cut_edges) throw std::logic_error("partition: stale cut list");
}

void write_partition(std::ostream& os, const Partition& p) {
  for (BlockId b : p.block_of) {
    if (b == kSeparatorBlock) {
      os << "S\n";
    } else if (b == kNoBlock) {
      os << "-\n";
    } else {
      os << b << '\n';
    }
  }
}

PartitionPool::PartitionPool(std::size_t capacity, std::uint32_t max_blocks, double epsilon)
    : capacity_(capacity), max_blocks_(max_blocks), epsilon_(epsilon) {
  if (capacity == 0) throw std::invalid_argument("PartitionPool: capacity must be positive");
  if (max_blocks < 2) throw std::invalid_argument("PartitionPool: max_blocks must be at least 2");
}

void PartitionPool::clear() {
  entries_.clear();
  graph_ = nullptr;
}

void PartitionPool::refill(const WeightedGraph& g, Rng& rng) {
  entries_.clear();
  std::vector<std::uint32_t> choices;
  for (std::uint32_t k = 2; k <= max_blocks_ && k <= g.live_count(); k *= 2) choices.push_back(k);
  std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
  const std::size_t two_way = (capacity_ + 1) / 2;
  for (std::size_t i = 0; i < capacity_; ++i) {
    const std::uint32_t k = i < two_way ? 2 : choices[pick(rng)];
    entries_.push_back({edge_partition(g, k, epsilon_, rng), std::nullopt});
  }
  graph_ = &g;
  generation_ = g.generation();
}

const Partition& PartitionPool::fetch(const WeightedGraph& g, bool want_separator, bool two_way,
                                      Rng& rng) {
  if (g.live_count() < 2) throw std::invalid_argument("PartitionPool: fewer than two live vertices");
  if (graph_ != &g || generation_ != g.generation() || entries_.empty()) refill(g, rng);
  std::vector<std::size_t> match;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!two_way || entries_[i].edges.k == 2) match.push_back(i);
  }
  std::uniform_int_distribution<std::size_t> pick(0, match.size() - 1);
  Entry& e = entries_[match[pick(rng)]];
  if (!want_separator) return e.edges;
  if (!e.separator) e.separator = separator_from(g, e.edges);
  return *e.separator;
}

}  // namespace m2wis

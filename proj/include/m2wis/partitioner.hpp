#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "m2wis/graph.hpp"

namespace m2wis {

using BlockId = std::uint32_t;
inline constexpr BlockId kSeparatorBlock = std::numeric_limits<BlockId>::max();
inline constexpr BlockId kNoBlock = kSeparatorBlock - 1;  // dead vertices

inline constexpr double kDefaultEpsilon = 0.03;

struct Partition {
  std::uint32_t k = 0;
  double epsilon = kDefaultEpsilon;
  std::vector<BlockId> block_of;
  // Alive edges whose endpoints sit in distinct non-separator blocks.
  std::vector<std::pair<VertexId, VertexId>> cut_edges;
  bool has_separator = false;
  std::uint64_t generation = 0;

  VertexSet separator() const;
  VertexSet block(BlockId b) const;
  std::vector<std::size_t> block_sizes() const;
};

// floor((1 + epsilon) * ceil(n / k)).
std::size_t block_limit(std::size_t n, std::uint32_t k, double epsilon);

// Throws std::invalid_argument unless 2 <= k <= live_count.
Partition edge_partition(const WeightedGraph& g, std::uint32_t k, double epsilon, Rng& rng);
Partition vertex_separator(const WeightedGraph& g, std::uint32_t k, double epsilon, Rng& rng);

// Moves one endpoint of every cut edge into the separator.
Partition separator_from(const WeightedGraph& g, const Partition& edge_part);

// Throws std::logic_error naming the broken invariant.
void validate_partition(const WeightedGraph& g, const Partition& p);

// One block id per vertex per line, "S" for separator vertices, "-" for dead.
void write_partition(std::ostream& os, const Partition& p);

class PartitionPool {
 public:
  explicit PartitionPool(std::size_t capacity = 10, std::uint32_t max_blocks = 64,
                         double epsilon = kDefaultEpsilon);

  // Refills when the graph generation changed. Returns a uniformly random
  // entry; `two_way` restricts the draw to k = 2 entries. Requires at least
  // two live vertices.
  const Partition& fetch(const WeightedGraph& g, bool want_separator, bool two_way, Rng& rng);

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  void clear();

 private:
  struct Entry {
    Partition edges;
    std::optional<Partition> separator;
  };
  void refill(const WeightedGraph& g, Rng& rng);

  std::size_t capacity_;
  std::uint32_t max_blocks_;
  double epsilon_;
  std::vector<Entry> entries_;
  const WeightedGraph* graph_ = nullptr;
  std::uint64_t generation_ = 0;
};

}  // namespace m2wis

#pragma once

#include <cstdint>
#include <stdexcept>

#include "m2wis/graph.hpp"

namespace m2wis {

class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  std::size_t max_vertices = 30;
  std::uint64_t node_budget = 200'000'000;
};

struct OracleResult {
  Weight alpha_w = 0;
  VertexSet witness;
  std::uint64_t nodes = 0;
};

// Exact MWIS of the live graph by include/exclude branching on a maximum
// degree vertex, bounded by current weight plus remaining candidate weight.
// Refuses inputs beyond `limits` instead of truncating the search.
OracleResult brute_force(const WeightedGraph& g, const OracleLimits& limits = {});

}  // namespace m2wis

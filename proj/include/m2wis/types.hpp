#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace m2wis {

using VertexId = std::uint32_t;

// Vertex weights are non-negative integers. A signed type keeps the
// differences that appear in reduction conditions well defined.
using Weight = std::int64_t;

inline constexpr VertexId kInvalidVertex = std::numeric_limits<VertexId>::max();

// Sorted list of vertex ids.
using VertexSet = std::vector<VertexId>;

// All randomness in a solve flows through one engine of this type.
using Rng = std::mt19937_64;

}  // namespace m2wis

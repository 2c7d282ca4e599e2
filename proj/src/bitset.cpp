#include "m2wis/bitset.hpp"

#include <algorithm>
#include <stdexcept>

namespace m2wis {

Bitset Bitset::from_set(std::size_t bits, std::span<const VertexId> members) {
  Bitset out(bits);
  for (VertexId v : members) {
    if (v >= bits) throw std::out_of_range("Bitset::from_set: id beyond size");
    out.set(v);
  }
  return out;
}

void Bitset::clear() { std::fill(words_.begin(), words_.end(), 0); }

std::size_t Bitset::count() const {
  return simd::active_kernels().popcount(words_.data(), words_.size());
}

std::size_t Bitset::intersection_count(const Bitset& other) const {
  if (other.bits_ != bits_) throw std::invalid_argument("Bitset size mismatch");
  return simd::active_kernels().and_popcount(words_.data(), other.words_.data(), words_.size());
}

Weight Bitset::weighted_sum(std::span<const Weight> weights) const {
  return simd::active_kernels().masked_weight_sum(words_.data(), words_.size(), weights.data(),
                                                  weights.size());
}

Weight Bitset::weighted_sum_excluding(const Bitset& excluded,
                                      std::span<const Weight> weights) const {
  if (excluded.bits_ != bits_) throw std::invalid_argument("Bitset size mismatch");
  return simd::active_kernels().andnot_weight_sum(words_.data(), excluded.words_.data(),
                                                  words_.size(), weights.data(), weights.size());
}

VertexSet Bitset::members() const {
  VertexSet out;
  for_each([&](VertexId v) { out.push_back(v); });
  return out;
}

}  // namespace m2wis

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "m2wis/simd/kernels.hpp"
#include "m2wis/types.hpp"

namespace m2wis {

// Dense vertex indicator backed by 64-bit words.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  static Bitset from_set(std::size_t bits, std::span<const VertexId> members);

  std::size_t size() const { return bits_; }
  std::span<const simd::Word> words() const { return words_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= simd::Word{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(simd::Word{1} << (i & 63)); }
  void clear();

  std::size_t count() const;
  // |this ∧ other|; both must have the same size.
  std::size_t intersection_count(const Bitset& other) const;
  Weight weighted_sum(std::span<const Weight> weights) const;
  // Sum of weights over bits set here and not in `excluded`.
  Weight weighted_sum_excluding(const Bitset& excluded, std::span<const Weight> weights) const;

  VertexSet members() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      simd::Word word = words_[w];
      while (word != 0) {
        f(static_cast<VertexId>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(word))));
        word &= word - 1;
      }
    }
  }

  friend bool operator==(const Bitset& a, const Bitset& b) {
    return a.bits_ == b.bits_ && a.words_ == b.words_;
  }

 private:
  std::size_t bits_ = 0;
  std::vector<simd::Word> words_;
};

}  // namespace m2wis

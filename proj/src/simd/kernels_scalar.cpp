#include <bit>

#include "m2wis/simd/kernels.hpp"

namespace m2wis::simd {
namespace {

std::size_t popcount_scalar(const Word* a, std::size_t words) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < words; ++i) total += static_cast<std::size_t>(std::popcount(a[i]));
  return total;
}

std::size_t and_popcount_scalar(const Word* a, const Word* b, std::size_t words) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < words; ++i) {
    total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  }
  return total;
}

Weight sum_word(Word w, std::size_t base, const Weight* weights, std::size_t n_weights) {
  Weight sum = 0;
  while (w != 0) {
    const std::size_t idx = base + static_cast<std::size_t>(std::countr_zero(w));
    if (idx < n_weights) sum += weights[idx];
    w &= w - 1;
  }
  return sum;
}

Weight masked_weight_sum_scalar(const Word* bits, std::size_t words, const Weight* weights,
                                std::size_t n_weights) {
  Weight sum = 0;
  for (std::size_t i = 0; i < words; ++i) sum += sum_word(bits[i], i * 64, weights, n_weights);
  return sum;
}

Weight andnot_weight_sum_scalar(const Word* bits, const Word* mask_out, std::size_t words,
                                const Weight* weights, std::size_t n_weights) {
  Weight sum = 0;
  for (std::size_t i = 0; i < words; ++i) {
    sum += sum_word(bits[i] & ~mask_out[i], i * 64, weights, n_weights);
  }
  return sum;
}

constexpr KernelTable kScalar{Isa::Scalar, popcount_scalar, and_popcount_scalar,
                              masked_weight_sum_scalar, andnot_weight_sum_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace m2wis::simd

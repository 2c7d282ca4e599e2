// Compiled with -mavx2 -mpopcnt; only reached after a CPUID check.

#include <immintrin.h>

#include <array>
#include <bit>

#include "m2wis/simd/kernels.hpp"

namespace m2wis::simd {
namespace {

// Mula's nibble-lookup popcount, reduced with SAD against zero.
inline __m256i popcount_bytes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
}

inline std::size_t horizontal_sum_u64(__m256i acc) {
  alignas(32) std::array<std::uint64_t, 4> lanes{};
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes.data()), acc);
  return static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
}

inline Weight horizontal_sum_i64(__m256i acc) {
  alignas(32) std::array<std::int64_t, 4> lanes{};
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes.data()), acc);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

std::size_t popcount_avx2(const Word* a, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(v), _mm256_setzero_si256()));
  }
  std::size_t total = horizontal_sum_u64(acc);
  for (; i < words; ++i) total += static_cast<std::size_t>(_mm_popcnt_u64(a[i]));
  return total;
}

std::size_t and_popcount_avx2(const Word* a, const Word* b, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i v = _mm256_and_si256(va, vb);
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(v), _mm256_setzero_si256()));
  }
  std::size_t total = horizontal_sum_u64(acc);
  for (; i < words; ++i) total += static_cast<std::size_t>(_mm_popcnt_u64(a[i] & b[i]));
  return total;
}

// Lane masks for every 4-bit pattern: lane j is all ones iff bit j is set.
struct NibbleMasks {
  alignas(32) std::array<std::array<std::int64_t, 4>, 16> lanes{};
  constexpr NibbleMasks() {
    for (int p = 0; p < 16; ++p) {
      for (int j = 0; j < 4; ++j) lanes[p][j] = ((p >> j) & 1) ? -1 : 0;
    }
  }
};
constexpr NibbleMasks kNibbleMasks{};

inline Weight scalar_word_sum(Word w, std::size_t base, const Weight* weights,
                              std::size_t n_weights) {
  Weight sum = 0;
  while (w != 0) {
    const std::size_t idx = base + static_cast<std::size_t>(std::countr_zero(w));
    if (idx < n_weights) sum += weights[idx];
    w &= w - 1;
  }
  return sum;
}

// Dense words go through 16 masked 4-lane adds; sparse words (few bits) are
// cheaper bit by bit.
inline __m256i accumulate_word(__m256i acc, Word w, const Weight* base) {
  for (int nib = 0; nib < 16; ++nib) {
    const unsigned pattern = static_cast<unsigned>((w >> (4 * nib)) & 0xfu);
    if (pattern == 0) continue;
    const __m256i mask =
        _mm256_load_si256(reinterpret_cast<const __m256i*>(kNibbleMasks.lanes[pattern].data()));
    const __m256i vals = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(base + 4 * nib));
    acc = _mm256_add_epi64(acc, _mm256_and_si256(mask, vals));
  }
  return acc;
}

Weight masked_sum_impl(const Word* bits, const Word* mask_out, std::size_t words,
                       const Weight* weights, std::size_t n_weights) {
  __m256i acc = _mm256_setzero_si256();
  Weight tail = 0;
  for (std::size_t i = 0; i < words; ++i) {
    Word w = bits[i];
    if (mask_out) w &= ~mask_out[i];
    if (w == 0) continue;
    const std::size_t base = i * 64;
    if (base + 64 > n_weights || std::popcount(w) < 8) {
      tail += scalar_word_sum(w, base, weights, n_weights);
    } else {
      acc = accumulate_word(acc, w, weights + base);
    }
  }
  return horizontal_sum_i64(acc) + tail;
}

Weight masked_weight_sum_avx2(const Word* bits, std::size_t words, const Weight* weights,
                              std::size_t n_weights) {
  return masked_sum_impl(bits, nullptr, words, weights, n_weights);
}

Weight andnot_weight_sum_avx2(const Word* bits, const Word* mask_out, std::size_t words,
                              const Weight* weights, std::size_t n_weights) {
  return masked_sum_impl(bits, mask_out, words, weights, n_weights);
}

constexpr KernelTable kAvx2{Isa::Avx2, popcount_avx2, and_popcount_avx2,
                            masked_weight_sum_avx2, andnot_weight_sum_avx2};

}  // namespace

namespace detail {
const KernelTable* avx2_table() { return &kAvx2; }
}  // namespace detail

}  // namespace m2wis::simd

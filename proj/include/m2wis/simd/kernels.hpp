#pragma once

// Word-parallel kernels over vertex bitsets. Every kernel has a portable
// scalar reference and, on x86-64 builds, an AVX2 variant. The variant is
// chosen once at runtime from CPUID; M2WIS_SIMD=scalar forces the reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "m2wis/types.hpp"

namespace m2wis::simd {

using Word = std::uint64_t;

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  // Number of set bits.
  std::size_t (*popcount)(const Word* a, std::size_t words);
  // Number of bits set in both a and b.
  std::size_t (*and_popcount)(const Word* a, const Word* b, std::size_t words);
  // Sum of weights[i] over set bits i. `weights` holds at least words*64
  // entries or the bits past its end are zero; `n_weights` bounds the reads.
  Weight (*masked_weight_sum)(const Word* bits, std::size_t words, const Weight* weights,
                              std::size_t n_weights);
  // Sum of weights[i] over bits set in `bits` and clear in `mask_out`.
  Weight (*andnot_weight_sum)(const Word* bits, const Word* mask_out, std::size_t words,
                              const Weight* weights, std::size_t n_weights);
};

const KernelTable& scalar_kernels();

// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_kernels();

bool cpu_supports_avx2();

// Table selected for this process.
const KernelTable& active_kernels();

std::string_view isa_name(Isa isa);

}  // namespace m2wis::simd

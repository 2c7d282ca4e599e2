#include <cstdlib>
#include <string>

#include "m2wis/simd/kernels.hpp"

namespace m2wis::simd {

#ifdef M2WIS_HAVE_AVX2_KERNELS
namespace detail {
const KernelTable* avx2_table();
}
#endif

const KernelTable* avx2_kernels() {
#ifdef M2WIS_HAVE_AVX2_KERNELS
  return detail::avx2_table();
#else
  return nullptr;
#endif
}

bool cpu_supports_avx2() {
#if defined(M2WIS_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

namespace {

const KernelTable& select_kernels() {
  if (const char* forced = std::getenv("M2WIS_SIMD")) {
    if (std::string(forced) == "scalar") return scalar_kernels();
  }
  if (const KernelTable* avx2 = avx2_kernels(); avx2 != nullptr && cpu_supports_avx2()) {
    return *avx2;
  }
  return scalar_kernels();
}

}  // namespace

const KernelTable& active_kernels() {
  static const KernelTable& table = select_kernels();
  return table;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace m2wis::simd

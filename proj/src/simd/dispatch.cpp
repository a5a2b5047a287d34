#include "plategate/simd/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace plategate::simd {

#if defined(PLATEGATE_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;  // kernels_avx2.cpp
#endif

const KernelTable* avx2_kernels() noexcept {
#if defined(PLATEGATE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() noexcept {
  static const KernelTable& table = []() -> const KernelTable& {
    if (const char* env = std::getenv("PLATEGATE_SIMD"); env && std::string_view(env) == "scalar")
      return scalar_kernels();
    if (const KernelTable* vec = avx2_kernels()) return *vec;
    return scalar_kernels();
  }();
  return table;
}

}  // namespace plategate::simd

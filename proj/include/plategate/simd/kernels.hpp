#pragma once

// Data-parallel inner loops used by the vision pipeline.
//
// Every kernel has a scalar reference implementation. Vector variants are
// compiled into separate translation units and picked at runtime from the
// CPU feature set; they must produce bit-identical output to the scalar
// reference (see tests/unit/test_simd.cpp).

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace plategate::simd {

struct KernelTable {
  std::string_view name;

  /// out[i] = floor((299 R + 587 G + 114 B + 500) / 1000) for interleaved RGB.
  void (*rgb_to_luma)(const std::uint8_t* rgb, std::uint8_t* out, std::size_t pixels);

  /// Sobel L1 magnitude, clamped to 255, for columns [1, width - 2] of the
  /// row `mid`. Columns 0 and width - 1 of `out` are left untouched.
  void (*sobel_row)(const std::uint8_t* above, const std::uint8_t* mid,
                    const std::uint8_t* below, std::uint8_t* out, std::size_t width);

  void (*max_u8)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n);
  void (*min_u8)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n);

  /// Number of positions where a[i] == b[i].
  std::size_t (*count_equal_u8)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

/// AVX2 table, or nullptr when it was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels() noexcept;

/// The table used by the library. Chosen once from the CPU features; the
/// environment variable PLATEGATE_SIMD=scalar forces the reference path.
const KernelTable& active_kernels() noexcept;

}  // namespace plategate::simd

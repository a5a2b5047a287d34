#include "plategate/simd/kernels.hpp"

#include <algorithm>
#include <cstdlib>

namespace plategate::simd {
namespace {

void rgb_to_luma_scalar(const std::uint8_t* rgb, std::uint8_t* out, std::size_t pixels) {
  for (std::size_t i = 0; i < pixels; ++i) {
    const std::uint32_t r = rgb[3 * i], g = rgb[3 * i + 1], b = rgb[3 * i + 2];
    out[i] = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
  }
}

void sobel_row_scalar(const std::uint8_t* a, const std::uint8_t* c, const std::uint8_t* b,
                      std::uint8_t* out, std::size_t width) {
  for (std::size_t x = 1; x + 1 < width; ++x) {
    const int gx = (a[x + 1] + 2 * c[x + 1] + b[x + 1]) - (a[x - 1] + 2 * c[x - 1] + b[x - 1]);
    const int gy = (b[x - 1] + 2 * b[x] + b[x + 1]) - (a[x - 1] + 2 * a[x] + a[x + 1]);
    out[x] = static_cast<std::uint8_t>(std::min(255, std::abs(gx) + std::abs(gy)));
  }
}

void max_u8_scalar(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::max(a[i], b[i]);
}

void min_u8_scalar(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::min(a[i], b[i]);
}

std::size_t count_equal_u8_scalar(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += (a[i] == b[i]);
  return count;
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{"scalar",         rgb_to_luma_scalar, sobel_row_scalar,
                                 max_u8_scalar,    min_u8_scalar,      count_equal_u8_scalar};
  return table;
}

}  // namespace plategate::simd

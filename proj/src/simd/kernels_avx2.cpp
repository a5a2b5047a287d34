// Compiled with -mavx2; only reached through the runtime check in dispatch.cpp.

#include "plategate/simd/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cstdlib>

namespace plategate::simd {
namespace {

// floor(x / 1000) for x < 2^18 via a 2^32-scaled reciprocal; exact over the
// whole luma range (checked exhaustively in the equivalence test).
inline __m256i div1000_epu32(__m256i x) {
  const __m256i magic = _mm256_set1_epi32(4294968);
  const __m256i even = _mm256_srli_epi64(_mm256_mul_epu32(x, magic), 32);
  const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), magic);
  return _mm256_blend_epi32(even, odd, 0xAA);
}

void rgb_to_luma_avx2(const std::uint8_t* rgb, std::uint8_t* out, std::size_t pixels) {
  const __m256i offsets = _mm256_setr_epi32(0, 3, 6, 9, 12, 15, 18, 21);
  const __m256i byte = _mm256_set1_epi32(0xFF);
  const __m256i wr = _mm256_set1_epi32(299), wg = _mm256_set1_epi32(587),
                wb = _mm256_set1_epi32(114), half = _mm256_set1_epi32(500);
  std::size_t i = 0;
  // Each gather reads 4 bytes from 3*i, so keep one pixel of slack at the end.
  for (; i + 9 <= pixels; i += 8) {
    const __m256i px = _mm256_i32gather_epi32(reinterpret_cast<const int*>(rgb + 3 * i), offsets, 1);
    const __m256i r = _mm256_and_si256(px, byte);
    const __m256i g = _mm256_and_si256(_mm256_srli_epi32(px, 8), byte);
    const __m256i b = _mm256_and_si256(_mm256_srli_epi32(px, 16), byte);
    __m256i sum = _mm256_add_epi32(_mm256_mullo_epi32(r, wr), _mm256_mullo_epi32(g, wg));
    sum = _mm256_add_epi32(sum, _mm256_add_epi32(_mm256_mullo_epi32(b, wb), half));
    const __m256i y = div1000_epu32(sum);
    const __m128i lo = _mm256_castsi256_si128(y), hi = _mm256_extracti128_si256(y, 1);
    const __m128i packed16 = _mm_packus_epi32(lo, hi);
    const __m128i packed8 = _mm_packus_epi16(packed16, packed16);
    _mm_storel_epi64(reinterpret_cast<__m128i*>(out + i), packed8);
  }
  for (; i < pixels; ++i) {
    const std::uint32_t r = rgb[3 * i], g = rgb[3 * i + 1], b = rgb[3 * i + 2];
    out[i] = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
  }
}

inline __m256i load16_widen(const std::uint8_t* p) {
  return _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p)));
}

void sobel_row_avx2(const std::uint8_t* a, const std::uint8_t* c, const std::uint8_t* b,
                    std::uint8_t* out, std::size_t width) {
  std::size_t x = 1;
  const __m256i cap = _mm256_set1_epi16(255);
  // Loads touch [x - 1, x + 16], so the vector loop needs x + 17 <= width.
  for (; x + 17 <= width; x += 16) {
    const __m256i al = load16_widen(a + x - 1), am = load16_widen(a + x), ar = load16_widen(a + x + 1);
    const __m256i cl = load16_widen(c + x - 1), cr = load16_widen(c + x + 1);
    const __m256i bl = load16_widen(b + x - 1), bm = load16_widen(b + x), br = load16_widen(b + x + 1);
    const __m256i right = _mm256_add_epi16(_mm256_add_epi16(ar, br), _mm256_slli_epi16(cr, 1));
    const __m256i left = _mm256_add_epi16(_mm256_add_epi16(al, bl), _mm256_slli_epi16(cl, 1));
    const __m256i bottom = _mm256_add_epi16(_mm256_add_epi16(bl, br), _mm256_slli_epi16(bm, 1));
    const __m256i top = _mm256_add_epi16(_mm256_add_epi16(al, ar), _mm256_slli_epi16(am, 1));
    const __m256i gx = _mm256_abs_epi16(_mm256_sub_epi16(right, left));
    const __m256i gy = _mm256_abs_epi16(_mm256_sub_epi16(bottom, top));
    const __m256i mag = _mm256_min_epi16(_mm256_add_epi16(gx, gy), cap);
    const __m128i packed = _mm_packus_epi16(_mm256_castsi256_si128(mag), _mm256_extracti128_si256(mag, 1));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out + x), packed);
  }
  for (; x + 1 < width; ++x) {
    const int gx = (a[x + 1] + 2 * c[x + 1] + b[x + 1]) - (a[x - 1] + 2 * c[x - 1] + b[x - 1]);
    const int gy = (b[x - 1] + 2 * b[x] + b[x + 1]) - (a[x - 1] + 2 * a[x] + a[x + 1]);
    out[x] = static_cast<std::uint8_t>(std::min(255, std::abs(gx) + std::abs(gy)));
  }
}

void max_u8_avx2(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_max_epu8(va, vb));
  }
  for (; i < n; ++i) out[i] = std::max(a[i], b[i]);
}

void min_u8_avx2(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_min_epu8(va, vb));
  }
  for (; i < n; ++i) out[i] = std::min(a[i], b[i]);
}

std::size_t count_equal_u8_avx2(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  std::size_t count = 0, i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const auto mask = static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
    count += static_cast<std::size_t>(__builtin_popcount(mask));
  }
  for (; i < n; ++i) count += (a[i] == b[i]);
  return count;
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table{"avx2",       rgb_to_luma_avx2, sobel_row_avx2,
                                 max_u8_avx2,  min_u8_avx2,      count_equal_u8_avx2};
  return table;
}

}  // namespace plategate::simd

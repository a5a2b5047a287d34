#include "plategate/ocr/match.hpp"

#include <stdexcept>

#include "plategate/plate_grammar.hpp"
#include "plategate/simd/kernels.hpp"

namespace plategate::ocr {

double ncc_pm1(const imaging::BinaryImage& a, const imaging::BinaryImage& b) {
  if (a.width() != b.width() || a.height() != b.height() || a.empty())
    throw std::invalid_argument("ncc_pm1: size mismatch");
  const std::size_t n = a.size();
  const std::size_t equal = simd::active_kernels().count_equal_u8(a.data().data(), b.data().data(), n);
  return (2.0 * static_cast<double>(equal) - static_cast<double>(n)) / static_cast<double>(n);
}

CharMatch match_char(const imaging::BinaryImage& glyph, const GlyphAtlas& atlas) {
  if (glyph.width() != kGlyphWidth || glyph.height() != kGlyphHeight)
    throw std::invalid_argument("match_char: glyph must be 16x32");
  CharMatch m;
  m.per_char.fill(-1.0);
  for (const auto& t : atlas.templates()) {
    const int idx = alphabet_index(t.ch);
    m.per_char[idx] = std::max(m.per_char[idx], ncc_pm1(glyph, t.bits));
  }
  for (std::size_t i = 0; i < m.per_char.size(); ++i) {
    if (m.per_char[i] > m.score) {
      m.score = m.per_char[i];
      m.ch = kPlateAlphabet[i];
    }
  }
  return m;
}

}  // namespace plategate::ocr

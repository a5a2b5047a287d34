#pragma once

#include <array>

#include "plategate/imaging/image.hpp"
#include "plategate/ocr/atlas.hpp"

namespace plategate::ocr {

/// Normalized cross-correlation of two equal-sized binaries with pixels
/// mapped to +1/-1: (agreements - disagreements) / pixel count.
double ncc_pm1(const imaging::BinaryImage& a, const imaging::BinaryImage& b);

struct CharMatch {
  char ch = '?';
  double score = -1.0;
  std::array<double, 36> per_char{};  ///< best score per alphabet character
};

/// Best character for a 16x32 glyph; ties go to the earlier character in
/// A-Z, 0-9 order.
CharMatch match_char(const imaging::BinaryImage& glyph, const GlyphAtlas& atlas);

}  // namespace plategate::ocr

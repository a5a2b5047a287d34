#pragma once

#include <span>
#include <vector>

#include "plategate/imaging/image.hpp"

namespace plategate::ocr {

inline constexpr int kGlyphWidth = 16;
inline constexpr int kGlyphHeight = 32;

struct GlyphTemplate {
  char ch = 0;
  int font_id = 0;
  imaging::BinaryImage bits;  ///< 16x32, 1 = ink
};

/// Templates for A-Z and 0-9, one per built-in font face. Immutable once
/// built and safe to share between threads.
class GlyphAtlas {
 public:
  static GlyphAtlas build();

  std::span<const GlyphTemplate> templates() const noexcept { return templates_; }
  std::vector<const GlyphTemplate*> templates_for(char c) const;
  std::size_t character_count() const noexcept;

 private:
  std::vector<GlyphTemplate> templates_;  ///< grouped by character in alphabet order
};

}  // namespace plategate::ocr

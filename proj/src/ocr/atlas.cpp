#include "plategate/ocr/atlas.hpp"

#include <algorithm>

#include "plategate/plate_grammar.hpp"
#include "plategate/synth/font.hpp"

namespace plategate::ocr {

GlyphAtlas GlyphAtlas::build() {
  GlyphAtlas atlas;
  for (char c : kPlateAlphabet)
    for (int font = 0; font < synth::kFontCount; ++font)
      atlas.templates_.push_back({c, font, synth::glyph_template(c, font, kGlyphWidth, kGlyphHeight)});
  return atlas;
}

std::vector<const GlyphTemplate*> GlyphAtlas::templates_for(char c) const {
  std::vector<const GlyphTemplate*> out;
  for (const auto& t : templates_)
    if (t.ch == c) out.push_back(&t);
  return out;
}

std::size_t GlyphAtlas::character_count() const noexcept {
  std::size_t n = 0;
  for (std::size_t i = 0; i < templates_.size(); ++i)
    if (i == 0 || templates_[i].ch != templates_[i - 1].ch) ++n;
  return n;
}

}  // namespace plategate::ocr

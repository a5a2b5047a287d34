#include "plategate/synth/plate.hpp"

#include <algorithm>
#include <cmath>

#include "plategate/plate_grammar.hpp"
#include "plategate/synth/font.hpp"

namespace plategate::synth {
namespace {

constexpr int kMinMargin = 4;
constexpr int kHorizontalMargin = 6;

}  // namespace

std::vector<imaging::BBox> plate_character_cells(const PlateSpec& spec) {
  if (!is_valid_plate(spec.text)) throw InvalidPlateText(spec.text);
  const int n = static_cast<int>(spec.text.size());
  const int margin_y = std::max(kMinMargin, static_cast<int>(std::lround(0.08 * spec.plate_h)));
  const int glyph_h = spec.plate_h - 2 * margin_y;
  // A multiple of the grid width keeps every font column equally thick.
  const int glyph_w = kGlyphCols * std::max(1, static_cast<int>(std::lround(0.35 * glyph_h / kGlyphCols)));
  const int gap = (spec.plate_w - 2 * kHorizontalMargin - n * glyph_w) / (n - 1);
  if (glyph_h < kGlyphRows || glyph_w < kGlyphCols || gap < 1)
    throw std::invalid_argument("plate too small for its text");
  const int text_w = n * glyph_w + (n - 1) * gap;
  const int x0 = (spec.plate_w - text_w) / 2;

  std::vector<imaging::BBox> cells;
  cells.reserve(n);
  for (int i = 0; i < n; ++i) cells.push_back({x0 + i * (glyph_w + gap), margin_y, glyph_w, glyph_h});
  return cells;
}

imaging::GrayImage render_plate(const PlateSpec& spec) {
  if (spec.fg == spec.bg) throw std::invalid_argument("plate fg and bg must differ");
  const auto cells = plate_character_cells(spec);
  imaging::GrayImage plate(spec.plate_w, spec.plate_h, spec.bg);
  for (std::size_t i = 0; i < cells.size(); ++i) draw_glyph(plate, spec.text[i], spec.font_id, cells[i], spec.fg);
  return plate;
}

}  // namespace plategate::synth

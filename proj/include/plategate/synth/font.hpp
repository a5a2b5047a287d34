#pragma once

#include <array>
#include <cstdint>

#include "plategate/imaging/geometry.hpp"
#include "plategate/imaging/image.hpp"

namespace plategate::synth {

// Built-in 5x7 bitmap font for A-Z and 0-9. Font 0 is the regular face;
// font 1 is a bold variant where every set cell also sets its right-hand
// neighbour within the 5-column box.

inline constexpr int kGlyphCols = 5;
inline constexpr int kGlyphRows = 7;
inline constexpr int kFontCount = 2;

/// One byte per row, top row first; bit 4 is the leftmost column.
using GlyphBitmap = std::array<std::uint8_t, kGlyphRows>;

/// Throws std::invalid_argument for characters outside A-Z/0-9 or a bad font id.
GlyphBitmap glyph_bitmap(char c, int font_id);

inline bool glyph_bit(const GlyphBitmap& g, int col, int row) noexcept {
  return ((g[row] >> (kGlyphCols - 1 - col)) & 1U) != 0;
}

/// Draws the glyph into `cell` by nearest-cell mapping: grid column c spans
/// pixels [round(c*w/5), round((c+1)*w/5)), rows likewise with 7.
void draw_glyph(imaging::GrayImage& canvas, char c, int font_id, const imaging::BBox& cell, std::uint8_t ink);

/// The glyph's tight bounding box on the 5x7 grid mapped onto a width x height
/// binary raster (1 = ink). This is the shape a segmented character takes
/// after it is cropped to its ink and resampled.
imaging::BinaryImage glyph_template(char c, int font_id, int width = 16, int height = 32);

}  // namespace plategate::synth

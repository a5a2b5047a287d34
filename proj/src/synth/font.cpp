#include "plategate/synth/font.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "plategate/plate_grammar.hpp"

namespace plategate::synth {
namespace {

// Rows as 5-character strings, '#' = ink.
constexpr std::array<std::array<const char*, kGlyphRows>, 36> kRegular = {{
    {".###.", "#...#", "#...#", "#...#", "#####", "#...#", "#...#"},  // A
    {"####.", "#...#", "#...#", "####.", "#...#", "#...#", "####."},  // B
    {".###.", "#...#", "#....", "#....", "#....", "#...#", ".###."},  // C
    {"###..", "#..#.", "#...#", "#...#", "#...#", "#..#.", "###.."},  // D
    {"#####", "#....", "#....", "####.", "#....", "#....", "#####"},  // E
    {"#####", "#....", "#....", "####.", "#....", "#....", "#...."},  // F
    {".###.", "#...#", "#....", "#.###", "#...#", "#...#", ".####"},  // G
    {"#...#", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"},  // H
    {".###.", "..#..", "..#..", "..#..", "..#..", "..#..", ".###."},  // I
    {"..###", "...#.", "...#.", "...#.", "...#.", "#..#.", ".##.."},  // J
    {"#...#", "#..#.", "#.#..", "##...", "#.#..", "#..#.", "#...#"},  // K
    {"#....", "#....", "#....", "#....", "#....", "#....", "#####"},  // L
    {"#...#", "##.##", "#.#.#", "#.#.#", "#...#", "#...#", "#...#"},  // M
    {"#...#", "#...#", "##..#", "#.#.#", "#..##", "#...#", "#...#"},  // N
    {".###.", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."},  // O
    {"####.", "#...#", "#...#", "####.", "#....", "#....", "#...."},  // P
    {".###.", "#...#", "#...#", "#...#", "#.#.#", "#..#.", ".##.#"},  // Q
    {"####.", "#...#", "#...#", "####.", "#.#..", "#..#.", "#...#"},  // R
    {".####", "#....", "#....", ".###.", "....#", "....#", "####."},  // S
    {"#####", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."},  // T
    {"#...#", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."},  // U
    {"#...#", "#...#", "#...#", "#...#", "#...#", ".#.#.", "..#.."},  // V
    {"#...#", "#...#", "#...#", "#.#.#", "#.#.#", "#.#.#", ".#.#."},  // W
    {"#...#", "#...#", ".#.#.", "..#..", ".#.#.", "#...#", "#...#"},  // X
    {"#...#", "#...#", "#...#", ".#.#.", "..#..", "..#..", "..#.."},  // Y
    {"#####", "....#", "...#.", "..#..", ".#...", "#....", "#####"},  // Z
    {".###.", "#...#", "#..##", "#.#.#", "##..#", "#...#", ".###."},  // 0
    {"..#..", ".##..", "..#..", "..#..", "..#..", "..#..", ".###."},  // 1
    {".###.", "#...#", "....#", "...#.", "..#..", ".#...", "#####"},  // 2
    {"#####", "...#.", "..#..", "...#.", "....#", "#...#", ".###."},  // 3
    {"...#.", "..##.", ".#.#.", "#..#.", "#####", "...#.", "...#."},  // 4
    {"#####", "#....", "####.", "....#", "....#", "#...#", ".###."},  // 5
    {"..##.", ".#...", "#....", "####.", "#...#", "#...#", ".###."},  // 6
    {"#####", "....#", "...#.", "..#..", ".#...", ".#...", ".#..."},  // 7
    {".###.", "#...#", "#...#", ".###.", "#...#", "#...#", ".###."},  // 8
    {".###.", "#...#", "#...#", ".####", "....#", "...#.", ".##.."},  // 9
}};

GlyphBitmap parse(const std::array<const char*, kGlyphRows>& rows) {
  GlyphBitmap g{};
  for (int r = 0; r < kGlyphRows; ++r) {
    std::uint8_t bits = 0;
    for (int c = 0; c < kGlyphCols; ++c) bits = static_cast<std::uint8_t>((bits << 1) | (rows[r][c] == '#'));
    g[r] = bits;
  }
  return g;
}

int grid_edge(int index, int extent, int cells) {
  return static_cast<int>(std::lround(static_cast<double>(index) * extent / cells));
}

}  // namespace

GlyphBitmap glyph_bitmap(char c, int font_id) {
  const int index = alphabet_index(c);
  if (index < 0) throw std::invalid_argument(std::string("no glyph for character '") + c + "'");
  if (font_id < 0 || font_id >= kFontCount) throw std::invalid_argument("unknown font id");
  GlyphBitmap g = parse(kRegular[index]);
  if (font_id == 1) {
    for (auto& row : g) row = static_cast<std::uint8_t>((row | (row >> 1)) & 0x1F);
  }
  return g;
}

void draw_glyph(imaging::GrayImage& canvas, char c, int font_id, const imaging::BBox& cell, std::uint8_t ink) {
  const GlyphBitmap g = glyph_bitmap(c, font_id);
  for (int row = 0; row < kGlyphRows; ++row) {
    const int y0 = cell.y + grid_edge(row, cell.h, kGlyphRows), y1 = cell.y + grid_edge(row + 1, cell.h, kGlyphRows);
    for (int col = 0; col < kGlyphCols; ++col) {
      if (!glyph_bit(g, col, row)) continue;
      const int x0 = cell.x + grid_edge(col, cell.w, kGlyphCols), x1 = cell.x + grid_edge(col + 1, cell.w, kGlyphCols);
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x)
          if (canvas.contains(x, y)) canvas.at(x, y) = ink;
    }
  }
}

imaging::BinaryImage glyph_template(char c, int font_id, int width, int height) {
  const GlyphBitmap g = glyph_bitmap(c, font_id);
  int c0 = kGlyphCols, c1 = -1, r0 = kGlyphRows, r1 = -1;
  for (int row = 0; row < kGlyphRows; ++row)
    for (int col = 0; col < kGlyphCols; ++col)
      if (glyph_bit(g, col, row)) {
        c0 = std::min(c0, col);
        c1 = std::max(c1, col);
        r0 = std::min(r0, row);
        r1 = std::max(r1, row);
      }
  const int cols = c1 - c0 + 1, rows = r1 - r0 + 1;
  imaging::BinaryImage out(width, height);
  for (int row = 0; row < rows; ++row) {
    const int y0 = grid_edge(row, height, rows), y1 = grid_edge(row + 1, height, rows);
    for (int col = 0; col < cols; ++col) {
      if (!glyph_bit(g, c0 + col, r0 + row)) continue;
      const int x0 = grid_edge(col, width, cols), x1 = grid_edge(col + 1, width, cols);
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) out.at(x, y) = 1;
    }
  }
  return out;
}

}  // namespace plategate::synth

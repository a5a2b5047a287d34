#include "plategate/ocr/segment.hpp"

#include <algorithm>

#include "plategate/anpr/rectify.hpp"
#include "plategate/imaging/ops.hpp"
#include "plategate/ocr/atlas.hpp"

namespace plategate::ocr {

using imaging::BBox;

namespace {

constexpr int kMinGap = 2;
constexpr double kMinHeightFraction = 0.4;
constexpr int kMinWidth = 3;

struct Span {
  int begin;
  int end;  // exclusive
};

// Runs of non-zero entries, merging runs separated by fewer than kMinGap zeros.
std::vector<Span> runs(const std::vector<int>& profile, int min_gap) {
  std::vector<Span> out;
  const int n = static_cast<int>(profile.size());
  for (int i = 0; i < n;) {
    if (profile[i] == 0) {
      ++i;
      continue;
    }
    int j = i;
    while (j < n && profile[j] != 0) ++j;
    if (!out.empty() && i - out.back().end < min_gap) {
      out.back().end = j;
    } else {
      out.push_back({i, j});
    }
    i = j;
  }
  return out;
}

imaging::BinaryImage resample_nearest(const imaging::BinaryImage& src, const BBox& box) {
  imaging::BinaryImage out(kGlyphWidth, kGlyphHeight);
  for (int y = 0; y < kGlyphHeight; ++y) {
    const int sy = box.y + std::min(box.h - 1, static_cast<int>((y + 0.5) * box.h / kGlyphHeight));
    for (int x = 0; x < kGlyphWidth; ++x) {
      const int sx = box.x + std::min(box.w - 1, static_cast<int>((x + 0.5) * box.w / kGlyphWidth));
      out.at(x, y) = src.at(sx, sy);
    }
  }
  return out;
}

}  // namespace

std::vector<CharBox> segment_characters(const anpr::NormalizedPlate& plate) { return segment_characters(plate.image); }

std::vector<CharBox> segment_characters(const imaging::GrayImage& plate) {
  if (plate.width() != anpr::NormalizedPlate::kWidth || plate.height() != anpr::NormalizedPlate::kHeight)
    throw std::invalid_argument("segment_characters: plate must be 256x64");

  imaging::BinaryImage ink;
  try {
    ink = anpr::plate_ink_mask(plate, kMinHeightFraction);
  } catch (const imaging::DegenerateHistogram&) {
    throw NoCharacters();
  }

  const int w = ink.width(), h = ink.height();
  const auto longest = [](const std::vector<Span>& spans) {
    Span best{0, 0};
    for (const Span& r : spans)
      if (r.end - r.begin > best.end - best.begin) best = r;
    return best;
  };

  // The text band: the tallest stretch of inked rows. Specks above or below
  // it would otherwise bridge the gaps between characters.
  std::vector<int> all_rows(static_cast<std::size_t>(h), 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) all_rows[y] += ink.at(x, y);
  const Span band = longest(runs(all_rows, kMinGap));

  std::vector<int> columns(static_cast<std::size_t>(w), 0);
  for (int y = band.begin; y < band.end; ++y)
    for (int x = 0; x < w; ++x) columns[x] += ink.at(x, y);

  std::vector<CharBox> boxes;
  for (const Span& col : runs(columns, kMinGap)) {
    // Vertical extent: the longest run of inked rows inside this column span.
    // Single blank rows are bridged, as a diagonal stroke can skip one.
    std::vector<int> rows(static_cast<std::size_t>(h), 0);
    for (int y = band.begin; y < band.end; ++y)
      for (int x = col.begin; x < col.end; ++x) rows[y] += ink.at(x, y);
    const Span best = longest(runs(rows, kMinGap));
    if (best.end - best.begin < kMinHeightFraction * h) continue;

    // Re-tighten horizontally using only those rows.
    int x0 = col.end, x1 = col.begin - 1;
    for (int y = best.begin; y < best.end; ++y)
      for (int x = col.begin; x < col.end; ++x)
        if (ink.at(x, y)) {
          x0 = std::min(x0, x);
          x1 = std::max(x1, x);
        }
    if (x1 - x0 + 1 < kMinWidth) continue;

    const BBox box{x0, best.begin, x1 - x0 + 1, best.end - best.begin};
    boxes.push_back({box, resample_nearest(ink, box)});
  }
  if (boxes.empty()) throw NoCharacters();
  return boxes;
}

}  // namespace plategate::ocr

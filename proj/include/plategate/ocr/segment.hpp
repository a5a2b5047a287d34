#pragma once

#include <stdexcept>
#include <vector>

#include "plategate/anpr/detection.hpp"
#include "plategate/imaging/geometry.hpp"
#include "plategate/imaging/image.hpp"

namespace plategate::ocr {

class NoCharacters : public std::runtime_error {
 public:
  NoCharacters() : std::runtime_error("no characters found on plate") {}
};

struct CharBox {
  imaging::BBox bbox;          ///< within the normalized plate
  imaging::BinaryImage glyph;  ///< 16x32, 1 = ink
};

/// Takes the ink mask of the plate (see anpr::plate_ink_mask, so dark-on-light
/// and light-on-dark plates both work). The column projection is taken over
/// the text band (the tallest run of inked rows) and split at runs of >= 2
/// empty columns; single blank rows or columns do not split. Boxes shorter than 40% of the plate or
/// narrower than 3 px are dropped; the rest are resampled to 16x32 (nearest
/// neighbour). Throws NoCharacters.
std::vector<CharBox> segment_characters(const anpr::NormalizedPlate& plate);
std::vector<CharBox> segment_characters(const imaging::GrayImage& plate);

}  // namespace plategate::ocr

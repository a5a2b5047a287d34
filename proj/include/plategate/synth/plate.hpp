#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "plategate/imaging/geometry.hpp"
#include "plategate/imaging/image.hpp"

namespace plategate::synth {

class InvalidPlateText : public std::invalid_argument {
 public:
  explicit InvalidPlateText(const std::string& text) : std::invalid_argument("invalid plate text: \"" + text + "\"") {}
};

struct PlateSpec {
  std::string text;
  int plate_w = 200;
  int plate_h = 48;
  std::uint8_t fg = 30;   ///< ink
  std::uint8_t bg = 220;  ///< plate background
  int font_id = 0;
};

/// Character cells for a spec: uniform spacing, centered, >= 4 px margin.
std::vector<imaging::BBox> plate_character_cells(const PlateSpec& spec);

/// Renders the plate. Throws InvalidPlateText when the text breaks the plate
/// grammar and std::invalid_argument for impossible geometry or fg == bg.
imaging::GrayImage render_plate(const PlateSpec& spec);

}  // namespace plategate::synth

#pragma once

#include <stdexcept>
#include <vector>

#include "plategate/imaging/geometry.hpp"
#include "plategate/imaging/image.hpp"

namespace plategate::anpr {

class ImageTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateCrop : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Detection {
  imaging::BBox bbox;
  double angle_deg = 0.0;  ///< skew of the text line in image coordinates (y down)
  double score = 0.0;      ///< in [0, 1]

  bool operator==(const Detection&) const = default;
};

/// Fixed-size rectified crop fed to OCR.
struct NormalizedPlate {
  static constexpr int kWidth = 256;
  static constexpr int kHeight = 64;

  imaging::GrayImage image;
  Detection source;
};

}  // namespace plategate::anpr

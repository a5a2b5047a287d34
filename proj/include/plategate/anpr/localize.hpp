#pragma once

#include <vector>

#include "plategate/anpr/detection.hpp"

namespace plategate::anpr {

struct LocalizerConfig {
  int close_w = 9;
  int close_h = 3;
  double min_aspect = 2.0;
  double max_aspect = 6.0;
  double min_area_fraction = 0.001;
  double max_area_fraction = 0.10;
  double min_fill = 0.4;
  double ideal_aspect = 4.0;
};

/// Sobel -> Otsu -> closing -> connected components -> shape filter.
/// Results are sorted by descending score, then top-left position.
/// Throws ImageTooSmall below 64x32.
std::vector<Detection> localize_plates(const imaging::Image& img, const LocalizerConfig& config = {});
std::vector<Detection> localize_plates(const imaging::GrayImage& gray, const LocalizerConfig& config = {});

}  // namespace plategate::anpr

#pragma once

#include <cstdint>
#include <stdexcept>

#include "plategate/imaging/geometry.hpp"
#include "plategate/imaging/image.hpp"

namespace plategate::synth {

class PlateOutOfBounds : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Background { Textured, Flat };

struct SceneSpec {
  int canvas_w = 640;
  int canvas_h = 480;
  int plate_x = 0;  ///< top-left of the scaled plate before rotation
  int plate_y = 0;
  double scale = 1.0;
  double rotation_deg = 0.0;  ///< counter-clockwise as displayed, within [-15, 15]
  double noise_sigma = 0.0;
  int distractor_count = 0;
  std::uint64_t rng_seed = 0;
  Background background = Background::Textured;
  std::uint8_t flat_level = 90;
};

struct Scene {
  imaging::GrayImage image;
  imaging::BBox truth_bbox;  ///< tight box of the pixels covered by the plate
};

/// Analytic bounding box of the scaled, rotated plate rectangle in canvas
/// coordinates (outer pixel bounds).
imaging::BBox transformed_plate_bounds(int plate_w, int plate_h, const SceneSpec& scene);

/// Pastes the plate (bilinear resampling under scale and rotation) over a
/// textured or flat background, adds distractor rectangles and Gaussian
/// noise. When `base` is given it replaces the generated background, which
/// lets several plates share one canvas.
Scene compose_scene(const imaging::GrayImage& plate, const SceneSpec& scene, const imaging::GrayImage* base = nullptr);

}  // namespace plategate::synth

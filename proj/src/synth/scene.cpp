#include "plategate/synth/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "plategate/imaging/ops.hpp"
#include "plategate/synth/rng.hpp"

namespace plategate::synth {
namespace {

using imaging::BBox;
using imaging::GrayImage;

struct Placement {
  double cx, cy;  // plate centre on the canvas
  double cos_t, sin_t;
  double scale;
};

Placement placement_of(int plate_w, int plate_h, const SceneSpec& s) {
  const double theta = s.rotation_deg * std::numbers::pi / 180.0;
  return {s.plate_x + plate_w * s.scale / 2.0, s.plate_y + plate_h * s.scale / 2.0, std::cos(theta), std::sin(theta),
          s.scale};
}

std::uint8_t clamp_byte(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

void paint_background(GrayImage& canvas, Rng& rng) {
  const double base = rng.uniform(70.0, 130.0);
  const double slope_x = rng.uniform(-40.0, 40.0) / canvas.width();
  const double slope_y = rng.uniform(-30.0, 30.0) / canvas.height();
  const double wave_amp = rng.uniform(0.0, 8.0);
  const double wave_len = rng.uniform(150.0, 400.0);
  for (int y = 0; y < canvas.height(); ++y)
    for (int x = 0; x < canvas.width(); ++x)
      canvas.at(x, y) = clamp_byte(base + slope_x * x + slope_y * y +
                                   wave_amp * std::sin(2.0 * std::numbers::pi * (x + 0.5 * y) / wave_len));
  // Sparse speckle.
  const int speckles = static_cast<int>(canvas.size() / 250);
  for (int i = 0; i < speckles; ++i) {
    const int x = rng.uniform_int(0, canvas.width() - 2), y = rng.uniform_int(0, canvas.height() - 2);
    const double delta = (rng.chance(0.5) ? 1.0 : -1.0) * rng.uniform(8.0, 24.0);
    const int size = rng.uniform_int(1, 2);
    for (int dy = 0; dy < size; ++dy)
      for (int dx = 0; dx < size; ++dx) canvas.at(x + dx, y + dy) = clamp_byte(canvas.at(x + dx, y + dy) + delta);
  }
}

BBox expanded(const BBox& b, int by) { return {b.x - by, b.y - by, b.w + 2 * by, b.h + 2 * by}; }

bool overlaps(const BBox& a, const BBox& b) {
  return a.x < b.right() && b.x < a.right() && a.y < b.bottom() && b.y < a.bottom();
}

// Rectangles whose aspect ratio is far from a plate's: blocks and thin bars.
void paint_distractors(GrayImage& canvas, Rng& rng, int count, const BBox& keep_out) {
  std::vector<BBox> placed{expanded(keep_out, 16)};
  for (int i = 0; i < count; ++i) {
    for (int attempt = 0; attempt < 50; ++attempt) {
      BBox r;
      switch (rng.uniform_int(0, 2)) {
        case 0: {
          r.w = rng.uniform_int(20, 70);
          r.h = std::clamp(static_cast<int>(r.w * rng.uniform(0.75, 1.35)), 12, 90);
          break;
        }
        case 1: {
          r.h = rng.uniform_int(5, 12);
          r.w = rng.uniform_int(std::max(100, 9 * r.h), 220);
          break;
        }
        default: {
          r.w = rng.uniform_int(5, 12);
          r.h = rng.uniform_int(std::max(80, 9 * r.w), 160);
          break;
        }
      }
      if (r.w >= canvas.width() - 2 || r.h >= canvas.height() - 2) continue;
      r.x = rng.uniform_int(1, canvas.width() - r.w - 1);
      r.y = rng.uniform_int(1, canvas.height() - r.h - 1);
      const int level = rng.uniform_int(0, 255);
      const int local = canvas.at(r.x + r.w / 2, r.y + r.h / 2);
      if (std::abs(level - local) < 40) continue;
      if (std::any_of(placed.begin(), placed.end(), [&](const BBox& p) { return overlaps(p, expanded(r, 12)); }))
        continue;
      for (int y = r.y; y < r.bottom(); ++y)
        for (int x = r.x; x < r.right(); ++x) canvas.at(x, y) = static_cast<std::uint8_t>(level);
      placed.push_back(r);
      break;
    }
  }
}

}  // namespace

BBox transformed_plate_bounds(int plate_w, int plate_h, const SceneSpec& scene) {
  const Placement p = placement_of(plate_w, plate_h, scene);
  const double hw = plate_w * p.scale / 2.0, hh = plate_h * p.scale / 2.0;
  // Forward map of plate offsets (dx, dy): (dx cos + dy sin, -dx sin + dy cos).
  const double ex = std::abs(hw * p.cos_t) + std::abs(hh * p.sin_t);
  const double ey = std::abs(hw * p.sin_t) + std::abs(hh * p.cos_t);
  const int x0 = static_cast<int>(std::floor(p.cx - ex + 1e-9)), x1 = static_cast<int>(std::ceil(p.cx + ex - 1e-9));
  const int y0 = static_cast<int>(std::floor(p.cy - ey + 1e-9)), y1 = static_cast<int>(std::ceil(p.cy + ey - 1e-9));
  return {x0, y0, x1 - x0, y1 - y0};
}

Scene compose_scene(const GrayImage& plate, const SceneSpec& scene, const GrayImage* base) {
  if (scene.canvas_w < 1 || scene.canvas_h < 1) throw std::invalid_argument("canvas must be non-empty");
  if (!(scene.scale > 0.0)) throw std::invalid_argument("scene scale must be positive");
  if (scene.rotation_deg < -15.0 || scene.rotation_deg > 15.0)
    throw std::invalid_argument("scene rotation must lie within [-15, 15] degrees");
  if (scene.noise_sigma < 0.0 || scene.distractor_count < 0) throw std::invalid_argument("negative scene parameter");
  const BBox bounds = transformed_plate_bounds(plate.width(), plate.height(), scene);
  if (!bounds.within(scene.canvas_w, scene.canvas_h)) throw PlateOutOfBounds("transformed plate leaves the canvas");

  Rng rng(scene.rng_seed);
  GrayImage canvas(scene.canvas_w, scene.canvas_h, scene.flat_level);
  if (base) {
    if (base->width() != scene.canvas_w || base->height() != scene.canvas_h)
      throw std::invalid_argument("base canvas size differs from scene");
    canvas = *base;
  } else if (scene.background == Background::Textured) {
    paint_background(canvas, rng);
  }
  paint_distractors(canvas, rng, scene.distractor_count, bounds);

  // Inverse-map each candidate canvas pixel centre into plate coordinates.
  const Placement p = placement_of(plate.width(), plate.height(), scene);
  int min_x = scene.canvas_w, min_y = scene.canvas_h, max_x = -1, max_y = -1;
  for (int y = bounds.y; y < bounds.bottom(); ++y) {
    for (int x = bounds.x; x < bounds.right(); ++x) {
      const double dx = x + 0.5 - p.cx, dy = y + 0.5 - p.cy;
      const double u = (dx * p.cos_t - dy * p.sin_t) / p.scale + plate.width() / 2.0;
      const double v = (dx * p.sin_t + dy * p.cos_t) / p.scale + plate.height() / 2.0;
      if (u < 0.0 || v < 0.0 || u >= plate.width() || v >= plate.height()) continue;
      canvas.at(x, y) = clamp_byte(imaging::sample_bilinear(plate, u - 0.5, v - 0.5));
      min_x = std::min(min_x, x);
      min_y = std::min(min_y, y);
      max_x = std::max(max_x, x);
      max_y = std::max(max_y, y);
    }
  }
  if (max_x < 0) throw PlateOutOfBounds("plate covers no canvas pixel");

  if (scene.noise_sigma > 0.0)
    for (auto& px : canvas.data()) px = clamp_byte(px + rng.normal(0.0, scene.noise_sigma));

  return {std::move(canvas), BBox{min_x, min_y, max_x - min_x + 1, max_y - min_y + 1}};
}

}  // namespace plategate::synth

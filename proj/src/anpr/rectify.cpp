#include "plategate/anpr/rectify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "plategate/imaging/ops.hpp"

namespace plategate::anpr {

using imaging::BBox;
using imaging::GrayImage;

namespace {

constexpr int kCropMargin = 4;
constexpr double kSkewGlyphHeight = 0.2;
constexpr double kDegPerRad = 180.0 / std::numbers::pi;

// Unrotated side lengths of a rectangle whose rotated bounding box is w x h.
std::pair<double, double> unrotated_size(double w, double h, double angle_deg) {
  const double t = std::abs(angle_deg) / kDegPerRad;
  const double c = std::cos(t), s = std::sin(t), d = c * c - s * s;
  if (d < 0.5) return {w, h};
  const double uw = (w * c - h * s) / d, uh = (h * c - w * s) / d;
  if (uw < 1.0 || uh < 1.0) return {w, h};
  return {uw, uh};
}

int glyph_like_count(const imaging::ComponentLabels& cc, int width, int height, double min_glyph_height) {
  int n = 0;
  for (const auto& comp : cc.components) {
    const BBox& b = comp.bbox;
    if (b.h >= min_glyph_height * height && b.h <= 0.95 * height && b.w >= 2 && b.w <= 0.25 * width) ++n;
  }
  return n;
}

}  // namespace

imaging::BinaryImage plate_ink_mask(const GrayImage& crop, double min_glyph_height) {
  const imaging::BinaryImage bright = imaging::otsu_threshold(crop).binary;
  const imaging::BinaryImage dark = imaging::invert(bright);
  imaging::BinaryImage bright_clear = imaging::clear_border(bright), dark_clear = imaging::clear_border(dark);
  const int n_bright = glyph_like_count(imaging::connected_components(bright_clear), crop.width(), crop.height(),
                                        min_glyph_height);
  const int n_dark =
      glyph_like_count(imaging::connected_components(dark_clear), crop.width(), crop.height(), min_glyph_height);
  if (n_bright != n_dark) return n_bright > n_dark ? std::move(bright_clear) : std::move(dark_clear);
  return bright.count_foreground() * 2 <= bright.size() ? std::move(bright_clear) : std::move(dark_clear);
}

std::optional<double> estimate_skew(const GrayImage& crop) {
  imaging::BinaryImage fg;
  try {
    fg = plate_ink_mask(crop, kSkewGlyphHeight);
  } catch (const imaging::DegenerateHistogram&) {
    return std::nullopt;
  }
  const imaging::ComponentLabels cc = imaging::connected_components(fg);

  std::vector<std::pair<double, double>> centres;
  for (const auto& comp : cc.components) {
    const BBox& b = comp.bbox;
    if (b.h < kSkewGlyphHeight * crop.height() || b.h > 0.95 * crop.height()) continue;
    if (b.w > 0.25 * crop.width() || comp.area < 10) continue;
    centres.emplace_back(b.x + b.w / 2.0, b.y + b.h / 2.0);
  }
  if (centres.size() < 3) return std::nullopt;

  double mx = 0, my = 0;
  for (auto [x, y] : centres) {
    mx += x;
    my += y;
  }
  mx /= centres.size();
  my /= centres.size();
  double sxy = 0, sxx = 0;
  for (auto [x, y] : centres) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx <= 0.0) return std::nullopt;
  return std::atan(sxy / sxx) * kDegPerRad;
}

NormalizedPlate rectify_and_normalize(const imaging::Image& img, const Detection& det) {
  return rectify_and_normalize(imaging::to_grayscale(img), det);
}

NormalizedPlate rectify_and_normalize(const GrayImage& gray, const Detection& det) {
  const BBox& b = det.bbox;
  if (b.w < 1 || b.h < 1 || !b.within(gray.width(), gray.height()))
    throw std::invalid_argument("detection box outside image");

  const int x0 = std::max(0, b.x - kCropMargin), y0 = std::max(0, b.y - kCropMargin);
  const int x1 = std::min(gray.width(), b.right() + kCropMargin), y1 = std::min(gray.height(), b.bottom() + kCropMargin);
  const GrayImage region = imaging::crop(gray, {x0, y0, x1 - x0, y1 - y0});
  const auto [lo_it, hi_it] = std::minmax_element(region.data().begin(), region.data().end());
  if (*lo_it == *hi_it) throw DegenerateCrop("plate crop has zero variance");

  const double angle = estimate_skew(region).value_or(0.0);
  const auto [plate_w, plate_h] = unrotated_size(b.w, b.h, angle);
  const double span_w = plate_w + 2.0 * kCropMargin, span_h = plate_h + 2.0 * kCropMargin;
  const double cx = b.x + b.w / 2.0, cy = b.y + b.h / 2.0;
  const double c = std::cos(angle / kDegPerRad), s = std::sin(angle / kDegPerRad);

  constexpr int W = NormalizedPlate::kWidth, H = NormalizedPlate::kHeight;
  std::vector<double> samples(static_cast<std::size_t>(W) * H);
  for (int j = 0; j < H; ++j) {
    const double ly = ((j + 0.5) / H - 0.5) * span_h;
    for (int i = 0; i < W; ++i) {
      const double lx = ((i + 0.5) / W - 0.5) * span_w;
      const double sx = cx + lx * c - ly * s, sy = cy + lx * s + ly * c;
      samples[static_cast<std::size_t>(j) * W + i] = imaging::sample_bilinear(gray, sx - 0.5, sy - 0.5);
    }
  }

  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *mn, range = *mx - *mn;
  if (range < 1e-9) throw DegenerateCrop("normalized plate has zero variance");
  GrayImage out(W, H);
  auto dst = out.data();
  for (std::size_t k = 0; k < samples.size(); ++k)
    dst[k] = static_cast<std::uint8_t>(std::lround((samples[k] - lo) * 255.0 / range));

  Detection source = det;
  source.angle_deg = angle;
  return {std::move(out), source};
}

}  // namespace plategate::anpr

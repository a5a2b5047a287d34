#include "plategate/anpr/localize.hpp"

#include <algorithm>

#include "plategate/anpr/rectify.hpp"
#include "plategate/imaging/ops.hpp"

namespace plategate::anpr {

using imaging::BBox;

namespace {

constexpr int kMinWidth = 64;
constexpr int kMinHeight = 32;
constexpr int kMinSide = 8;

std::int64_t count_in_box(const imaging::BinaryImage& bin, const BBox& b) {
  std::int64_t n = 0;
  for (int y = b.y; y < b.bottom(); ++y) {
    auto row = bin.row(y).subspan(static_cast<std::size_t>(b.x), static_cast<std::size_t>(b.w));
    n += std::count(row.begin(), row.end(), std::uint8_t{1});
  }
  return n;
}

BBox with_margin(const BBox& b, int margin, int width, int height) {
  const int x0 = std::max(0, b.x - margin), y0 = std::max(0, b.y - margin);
  const int x1 = std::min(width, b.right() + margin), y1 = std::min(height, b.bottom() + margin);
  return {x0, y0, x1 - x0, y1 - y0};
}

}  // namespace

std::vector<Detection> localize_plates(const imaging::Image& img, const LocalizerConfig& config) {
  if (img.width() < kMinWidth || img.height() < kMinHeight)
    throw ImageTooSmall("image must be at least 64x32 for plate localization");
  return localize_plates(imaging::to_grayscale(img), config);
}

std::vector<Detection> localize_plates(const imaging::GrayImage& gray, const LocalizerConfig& config) {
  if (gray.width() < kMinWidth || gray.height() < kMinHeight)
    throw ImageTooSmall("image must be at least 64x32 for plate localization");

  const imaging::GrayImage gradient = imaging::sobel_magnitude(gray);
  imaging::BinaryImage edges;
  try {
    edges = imaging::otsu_threshold(gradient).binary;
  } catch (const imaging::DegenerateHistogram&) {
    return {};  // no gradient energy anywhere
  }
  const imaging::BinaryImage closed = imaging::morph_close(edges, config.close_w, config.close_h);
  const imaging::ComponentLabels cc = imaging::connected_components(closed);

  const double image_area = static_cast<double>(gray.width()) * gray.height();
  std::vector<Detection> out;
  for (const auto& comp : cc.components) {
    const BBox& b = comp.bbox;
    if (b.w < kMinSide || b.h < kMinSide) continue;
    const double aspect = static_cast<double>(b.w) / b.h;
    const double area_fraction = static_cast<double>(b.area()) / image_area;
    if (aspect < config.min_aspect || aspect > config.max_aspect) continue;
    if (area_fraction < config.min_area_fraction || area_fraction > config.max_area_fraction) continue;
    if (comp.fill_ratio() < config.min_fill) continue;

    const double density = static_cast<double>(count_in_box(edges, b)) / static_cast<double>(b.area());
    const double aspect_fit = std::min(aspect, config.ideal_aspect) / std::max(aspect, config.ideal_aspect);
    Detection det;
    det.bbox = b;
    det.score = std::clamp(density * aspect_fit, 0.0, 1.0);
    out.push_back(det);
  }

  std::sort(out.begin(), out.end(), [](const Detection& a, const Detection& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.bbox.y != b.bbox.y) return a.bbox.y < b.bbox.y;
    return a.bbox.x < b.bbox.x;
  });

  for (auto& det : out) {
    const BBox region = with_margin(det.bbox, 4, gray.width(), gray.height());
    det.angle_deg = estimate_skew(imaging::crop(gray, region)).value_or(0.0);
  }
  return out;
}

}  // namespace plategate::anpr

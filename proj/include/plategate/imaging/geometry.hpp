#pragma once

#include <algorithm>
#include <cstdint>

namespace plategate::imaging {

/// Axis-aligned box in pixel units; covers columns [x, x + w) and rows [y, y + h).
struct BBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  std::int64_t area() const noexcept { return static_cast<std::int64_t>(w) * h; }
  int right() const noexcept { return x + w; }
  int bottom() const noexcept { return y + h; }
  bool within(int width, int height) const noexcept {
    return x >= 0 && y >= 0 && w >= 0 && h >= 0 && right() <= width && bottom() <= height;
  }
  BBox translated(int dx, int dy) const noexcept { return {x + dx, y + dy, w, h}; }
  bool operator==(const BBox&) const = default;
};

/// Intersection over union; 0 for disjoint or empty boxes.
inline double iou(const BBox& a, const BBox& b) noexcept {
  const int ix = std::max(0, std::min(a.right(), b.right()) - std::max(a.x, b.x));
  const int iy = std::max(0, std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y));
  const std::int64_t inter = static_cast<std::int64_t>(ix) * iy;
  const std::int64_t uni = a.area() + b.area() - inter;
  return uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

}  // namespace plategate::imaging

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "plategate/imaging/geometry.hpp"
#include "plategate/imaging/image.hpp"

namespace plategate::imaging {

/// Luma with weights 0.299/0.587/0.114, rounded half up. 1-channel input is copied.
GrayImage to_grayscale(const Image& img);

/// 3x3 Sobel, |gx| + |gy| clamped to 255. The outermost ring of pixels is 0.
GrayImage sobel_magnitude(const GrayImage& img);

using Histogram = std::array<std::uint64_t, 256>;
Histogram histogram(const GrayImage& img);

/// Threshold maximizing between-class variance of {<= t} vs {> t}; smallest t
/// wins ties. Throws DegenerateHistogram when only one intensity is present.
int otsu_level(const Histogram& hist);

struct OtsuResult {
  int threshold = 0;
  BinaryImage binary;  ///< 1 where intensity > threshold
};

OtsuResult otsu_threshold(const GrayImage& img);

BinaryImage threshold_above(const GrayImage& img, int threshold);

BinaryImage invert(const BinaryImage& bin);

/// Rectangular dilation/erosion; pixels outside the image count as 0.
/// Kernel sides must be odd and >= 1.
BinaryImage dilate(const BinaryImage& bin, int kernel_w, int kernel_h);
BinaryImage erode(const BinaryImage& bin, int kernel_w, int kernel_h);
BinaryImage morph_close(const BinaryImage& bin, int kernel_w, int kernel_h);

struct ComponentStats {
  BBox bbox;
  std::int64_t area = 0;  ///< pixel count

  double fill_ratio() const noexcept {
    return bbox.area() > 0 ? static_cast<double>(area) / static_cast<double>(bbox.area()) : 0.0;
  }
};

/// 8-connected labels, numbered 1..count in row-major order of each
/// component's first pixel. 0 is background.
struct ComponentLabels {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> labels;
  int component_count = 0;
  std::vector<ComponentStats> components;  ///< components[i] describes label i + 1

  std::int32_t at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

ComponentLabels connected_components(const BinaryImage& bin);

/// Removes every foreground component that touches the image border.
BinaryImage clear_border(const BinaryImage& bin);

/// Bilinear sample at continuous index coordinates; coordinates are clamped
/// to the image so edge pixels replicate.
double sample_bilinear(const GrayImage& img, double x, double y) noexcept;

GrayImage crop(const GrayImage& img, const BBox& box);

}  // namespace plategate::imaging

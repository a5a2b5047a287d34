#pragma once

#include <optional>

#include "plategate/anpr/detection.hpp"

namespace plategate::anpr {

/// Ink mask of a plate-like crop with border-touching blobs removed. The Otsu
/// class that yields more character-shaped components (height within
/// [min_glyph_height, 0.95] of the crop, width at most a quarter of it) is
/// taken as ink; on a tie the minority class wins. Throws
/// imaging::DegenerateHistogram for a flat crop.
imaging::BinaryImage plate_ink_mask(const imaging::GrayImage& crop, double min_glyph_height);

/// Skew of the character row inside a plate crop, in degrees (image
/// coordinates, so a line rising to the right is negative). Characters come
/// from plate_ink_mask; the angle is a least-squares line through the
/// centres of the character-sized blobs. nullopt when fewer than three
/// such blobs exist.
std::optional<double> estimate_skew(const imaging::GrayImage& crop);

/// Crops det.bbox with a 4 px margin, undoes the estimated skew about the box
/// centre, resamples to 256x64 (bilinear) and stretches contrast to [0, 255].
/// Throws DegenerateCrop when the crop has no contrast.
NormalizedPlate rectify_and_normalize(const imaging::Image& img, const Detection& det);
NormalizedPlate rectify_and_normalize(const imaging::GrayImage& gray, const Detection& det);

}  // namespace plategate::anpr

#include "plategate/imaging/image.hpp"

#include <algorithm>

namespace plategate::imaging {

Image::Image(int width, int height, int channels)
    : Image(width, height, channels,
            std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) *
                                      std::max(height, 0) * std::max(channels, 0))) {}

Image::Image(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  if (width < 1 || height < 1) throw std::invalid_argument("image dimensions must be >= 1");
  if (channels != 1 && channels != 3) throw std::invalid_argument("image must have 1 or 3 channels");
  if (data_.size() != static_cast<std::size_t>(width) * height * channels)
    throw std::invalid_argument("image data length does not match width*height*channels");
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data) : Plane(width, height) {
  if (data.size() != data_.size()) throw std::invalid_argument("gray data length mismatch");
  data_ = std::move(data);
}

BinaryImage::BinaryImage(int width, int height, std::vector<std::uint8_t> data) : Plane(width, height) {
  if (data.size() != data_.size()) throw std::invalid_argument("binary data length mismatch");
  if (std::any_of(data.begin(), data.end(), [](std::uint8_t v) { return v > 1; }))
    throw std::invalid_argument("binary image values must be 0 or 1");
  data_ = std::move(data);
}

std::size_t BinaryImage::count_foreground() const noexcept {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

Image to_image(const GrayImage& gray) {
  auto bytes = gray.data();
  return Image(gray.width(), gray.height(), 1, std::vector<std::uint8_t>(bytes.begin(), bytes.end()));
}

}  // namespace plategate::imaging

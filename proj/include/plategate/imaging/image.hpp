#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace plategate::imaging {

class ImagingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateHistogram : public ImagingError {
 public:
  DegenerateHistogram() : ImagingError("degenerate histogram: all pixels share one intensity") {}
};

class MalformedHeader : public ImagingError {
 public:
  using ImagingError::ImagingError;
};

class TruncatedData : public ImagingError {
 public:
  using ImagingError::ImagingError;
};

class UnsupportedMaxval : public ImagingError {
 public:
  using ImagingError::ImagingError;
};

/// Interleaved 8-bit raster with 1 (gray) or 3 (RGB) channels, row-major.
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels);
  Image(int width, int height, int channels, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }

  std::uint8_t at(int x, int y, int c = 0) const {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  std::uint8_t& at(int x, int y, int c = 0) {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  bool operator==(const Image&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Single-channel plane of bytes. Shared storage for gray and binary images.
template <class Derived>
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, std::uint8_t fill = 0) {
    if (width < 1 || height < 1) throw std::invalid_argument("plane dimensions must be >= 1");
    width_ = width;
    height_ = height;
    data_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool contains(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }
  std::span<const std::uint8_t> row(int y) const noexcept {
    return std::span(data_).subspan(static_cast<std::size_t>(y) * width_, width_);
  }
  std::span<std::uint8_t> row(int y) noexcept {
    return std::span(data_).subspan(static_cast<std::size_t>(y) * width_, width_);
  }

  std::uint8_t at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
  std::uint8_t& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }

  bool operator==(const Plane&) const = default;

 protected:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

class GrayImage : public Plane<GrayImage> {
 public:
  using Plane::Plane;
  GrayImage(int width, int height, std::vector<std::uint8_t> data);
  bool operator==(const GrayImage&) const = default;
};

/// Values are strictly 0 or 1; 1 is foreground.
class BinaryImage : public Plane<BinaryImage> {
 public:
  using Plane::Plane;
  BinaryImage(int width, int height, std::vector<std::uint8_t> data);
  std::size_t count_foreground() const noexcept;
  bool operator==(const BinaryImage&) const = default;
};

Image to_image(const GrayImage& gray);

}  // namespace plategate::imaging

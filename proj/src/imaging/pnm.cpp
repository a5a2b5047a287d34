#include "plategate/imaging/pnm.hpp"

#include "plategate/imaging/ops.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

namespace plategate::imaging {
namespace {

bool is_space(std::uint8_t c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads an unsigned decimal token.
  long number(const char* what) {
    skip_separators();
    std::size_t start = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000L) throw MalformedHeader(std::string("PNM ") + what + " out of range");
      ++pos_;
    }
    if (pos_ == start) throw MalformedHeader(std::string("PNM header: expected ") + what);
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_]))
      throw MalformedHeader("PNM header: missing whitespace after maxval");
    return pos_ + 1;
  }

  std::size_t pos_ = 0;

 private:
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
};

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImagingError("cannot open image file: " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

Image decode_pnm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
    throw MalformedHeader("PNM header: expected magic P5 or P6");
  const int channels = bytes[1] == '5' ? 1 : 3;
  HeaderReader reader(bytes);
  reader.pos_ = 2;
  const long width = reader.number("width");
  const long height = reader.number("height");
  const long maxval = reader.number("maxval");
  if (width < 1 || height < 1) throw MalformedHeader("PNM header: zero dimension");
  if (maxval != 255) throw UnsupportedMaxval("PNM maxval must be 255, got " + std::to_string(maxval));
  const std::size_t offset = reader.raster_offset();
  const std::size_t expected = static_cast<std::size_t>(width) * height * channels;
  if (bytes.size() - std::min(offset, bytes.size()) < expected)
    throw TruncatedData("PNM raster truncated: expected " + std::to_string(expected) + " bytes, got " +
                        std::to_string(bytes.size() - std::min(offset, bytes.size())));
  std::vector<std::uint8_t> data(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                                 bytes.begin() + static_cast<std::ptrdiff_t>(offset + expected));
  return Image(static_cast<int>(width), static_cast<int>(height), channels, std::move(data));
}

std::vector<std::uint8_t> encode_pnm(const Image& img) {
  const std::string header = std::string(img.channels() == 1 ? "P5" : "P6") + "\n" +
                             std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.data().begin(), img.data().end());
  return out;
}

Image read_image(const std::filesystem::path& path) { return decode_pnm(slurp(path)); }

void write_image(const Image& img, const std::filesystem::path& path) {
  const auto bytes = encode_pnm(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ImagingError("cannot write image file: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ImagingError("short write: " + path.string());
}

GrayImage read_gray(const std::filesystem::path& path) { return to_grayscale(read_image(path)); }

void write_gray(const GrayImage& img, const std::filesystem::path& path) { write_image(to_image(img), path); }

}  // namespace plategate::imaging

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "plategate/imaging/image.hpp"

namespace plategate::imaging {

// Binary PGM (P5) for 1-channel images and PPM (P6) for 3-channel images,
// maxval 255 only.

Image decode_pnm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pnm(const Image& img);

Image read_image(const std::filesystem::path& path);
void write_image(const Image& img, const std::filesystem::path& path);

GrayImage read_gray(const std::filesystem::path& path);
void write_gray(const GrayImage& img, const std::filesystem::path& path);

}  // namespace plategate::imaging

#include "plategate/anpr/recognizer.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unistd.h>

#include "plategate/imaging/pnm.hpp"

namespace plategate::anpr {
namespace {
std::atomic<unsigned long> temp_counter{0};
}  // namespace

TimedDetections detect_timed(const Recognizer& recognizer, const imaging::Image& img) {
  const auto start = std::chrono::steady_clock::now();
  TimedDetections out;
  out.detections = recognizer.detect(img);
  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<Detection> ClassicalRecognizer::detect(const imaging::Image& img) const {
  return localize_plates(img, config_);
}

std::vector<Detection> parse_detection_lines(const std::string& text, int width, int height) {
  std::vector<Detection> out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto j = nlohmann::json::parse(line);
    const auto& b = j.at("bbox");
    int x0 = std::clamp(b.at(0).get<int>(), 0, width), y0 = std::clamp(b.at(1).get<int>(), 0, height);
    int x1 = std::clamp(b.at(0).get<int>() + b.at(2).get<int>(), 0, width);
    int y1 = std::clamp(b.at(1).get<int>() + b.at(3).get<int>(), 0, height);
    if (x1 <= x0 || y1 <= y0) continue;
    Detection d;
    d.bbox = {x0, y0, x1 - x0, y1 - y0};
    d.angle_deg = j.value("angle", 0.0);
    d.score = std::clamp(j.value("score", 0.0), 0.0, 1.0);
    out.push_back(d);
  }
  std::stable_sort(out.begin(), out.end(), [](const Detection& a, const Detection& b) { return a.score > b.score; });
  return out;
}

std::vector<Detection> ExternalProcessRecognizer::detect(const imaging::Image& img) const {
  const auto path = std::filesystem::temp_directory_path() /
                    ("plategate-detect-" + std::to_string(::getpid()) + "-" +
                     std::to_string(temp_counter++) + ".pgm");
  imaging::write_image(img, path);
  const std::string command = command_ + " '" + path.string() + "'";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(::popen(command.c_str(), "r"), ::pclose);
  if (!pipe) {
    std::filesystem::remove(path);
    throw std::runtime_error("cannot launch detector command: " + command_);
  }
  std::string output;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe.get())) output.append(buf.data(), n);
  const int status = ::pclose(pipe.release());
  std::filesystem::remove(path);
  if (status != 0) throw std::runtime_error("detector command failed: " + command_);
  return parse_detection_lines(output, img.width(), img.height());
}

}  // namespace plategate::anpr

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "plategate/anpr/detection.hpp"
#include "plategate/anpr/localize.hpp"

namespace plategate::anpr {

/// Anything that proposes plate boxes for an image. Implementations must
/// return detections sorted by descending score and be deterministic.
class Recognizer {
 public:
  virtual ~Recognizer() = default;
  virtual std::string name() const = 0;
  virtual std::vector<Detection> detect(const imaging::Image& img) const = 0;
};

struct TimedDetections {
  std::vector<Detection> detections;
  double elapsed_seconds = 0.0;
};

TimedDetections detect_timed(const Recognizer& recognizer, const imaging::Image& img);

/// The built-in edge/morphology localizer.
class ClassicalRecognizer final : public Recognizer {
 public:
  explicit ClassicalRecognizer(LocalizerConfig config = {}) : config_(config) {}
  std::string name() const override { return "classical"; }
  std::vector<Detection> detect(const imaging::Image& img) const override;

 private:
  LocalizerConfig config_;
};

/// Adapter for a detector living in another process (e.g. a CNN served from
/// Python). The command is run with the path of a temporary PGM appended and
/// must print one JSON object per detection:
///   {"bbox": [x, y, w, h], "angle": deg, "score": s}
class ExternalProcessRecognizer final : public Recognizer {
 public:
  ExternalProcessRecognizer(std::string name, std::string command)
      : name_(std::move(name)), command_(std::move(command)) {}
  std::string name() const override { return name_; }
  std::vector<Detection> detect(const imaging::Image& img) const override;

 private:
  std::string name_;
  std::string command_;
};

/// Parses the adapter's line-delimited output; boxes are clipped to the image
/// and the result is sorted by score.
std::vector<Detection> parse_detection_lines(const std::string& text, int width, int height);

}  // namespace plategate::anpr

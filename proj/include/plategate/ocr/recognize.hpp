#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "plategate/anpr/detection.hpp"
#include "plategate/ocr/atlas.hpp"

namespace plategate::ocr {

struct PlateReading {
  std::string text;
  std::vector<double> char_confidences;  ///< NCC per character, in [-1, 1]
  double elapsed_seconds = 0.0;
  bool low_confidence = false;
  bool grammar_corrected = false;
};

struct RecognizeOptions {
  double low_confidence_threshold = 0.55;
};

struct Correction {
  std::string text;
  std::vector<double> confidences;
};

/// When `raw` breaks the plate grammar, replaces each mismatching character
/// with the best-scoring character of the required kind from its confusion
/// group. nullopt when the raw text already parses or cannot be repaired
/// (wrong length, or a mismatch with no candidate in its group).
std::optional<Correction> grammar_correct(const std::string& raw, const std::vector<std::array<double, 36>>& scores);

PlateReading recognize_plate(const anpr::NormalizedPlate& plate, const GlyphAtlas& atlas,
                             const RecognizeOptions& options = {});
PlateReading recognize_plate(const imaging::GrayImage& plate, const GlyphAtlas& atlas,
                             const RecognizeOptions& options = {});

/// Terminal format: "time: <seconds>\n<PLATE>\n".
std::string format_reading(const PlateReading& reading);

}  // namespace plategate::ocr

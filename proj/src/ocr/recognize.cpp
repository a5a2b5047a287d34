#include "plategate/ocr/recognize.hpp"

#include <chrono>
#include <cstdio>

#include "plategate/ocr/match.hpp"
#include "plategate/ocr/segment.hpp"
#include "plategate/plate_grammar.hpp"

namespace plategate::ocr {

std::optional<Correction> grammar_correct(const std::string& raw, const std::vector<std::array<double, 36>>& scores) {
  if (is_valid_plate(raw)) return std::nullopt;
  const std::string_view layout = plate_layout(raw.size());
  if (layout.empty() || scores.size() != raw.size()) return std::nullopt;

  Correction fix{raw, {}};
  fix.confidences.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    const bool want_letter = layout[i] == 'L';
    const int idx = alphabet_index(c);
    if (idx >= 0 && (want_letter ? is_plate_letter(c) : is_plate_digit(c))) {
      fix.confidences.push_back(scores[i][idx]);
      continue;
    }
    const auto group = confusion_class(c);
    if (!group) return std::nullopt;
    char best = 0;
    double best_score = -2.0;
    for (char candidate : *group) {
      if (want_letter ? !is_plate_letter(candidate) : !is_plate_digit(candidate)) continue;
      const double s = scores[i][alphabet_index(candidate)];
      if (s > best_score) {
        best = candidate;
        best_score = s;
      }
    }
    if (best == 0) return std::nullopt;
    fix.text[i] = best;
    fix.confidences.push_back(best_score);
  }
  return fix;
}

PlateReading recognize_plate(const anpr::NormalizedPlate& plate, const GlyphAtlas& atlas,
                             const RecognizeOptions& options) {
  return recognize_plate(plate.image, atlas, options);
}

PlateReading recognize_plate(const imaging::GrayImage& plate, const GlyphAtlas& atlas,
                             const RecognizeOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  PlateReading reading;
  std::vector<std::array<double, 36>> scores;
  for (const CharBox& box : segment_characters(plate)) {
    const CharMatch m = match_char(box.glyph, atlas);
    reading.text += m.ch;
    reading.char_confidences.push_back(m.score);
    scores.push_back(m.per_char);
  }
  if (auto fix = grammar_correct(reading.text, scores)) {
    reading.text = std::move(fix->text);
    reading.char_confidences = std::move(fix->confidences);
    reading.grammar_corrected = true;
  }
  for (double c : reading.char_confidences)
    if (c < options.low_confidence_threshold) reading.low_confidence = true;
  reading.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return reading;
}

std::string format_reading(const PlateReading& reading) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "time: %.16g\n", reading.elapsed_seconds);
  return buf + reading.text + "\n";
}

}  // namespace plategate::ocr

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "plategate/anpr/recognizer.hpp"
#include "plategate/ocr/confusion.hpp"
#include "plategate/ocr/recognize.hpp"
#include "plategate/synth/corpus.hpp"

namespace plategate {

struct PipelineResult {
  std::vector<anpr::Detection> detections;
  std::optional<anpr::Detection> chosen;  ///< candidate the reading came from
  std::optional<ocr::PlateReading> reading;
  double elapsed_seconds = 0.0;  ///< whole call, detection included
};

/// Detects, rectifies and reads. Candidates are tried in score order and
/// the first grammar-valid reading wins; otherwise the top candidate's
/// reading is kept. At most `max_candidates` boxes are read.
PipelineResult read_plate(const imaging::Image& img, const anpr::Recognizer& recognizer,
                          const ocr::GlyphAtlas& atlas, std::size_t max_candidates = 3,
                          const ocr::RecognizeOptions& options = {});

/// Reads the plate inside a known box (rectify then recognize); "" when
/// the crop has no contrast or no characters.
std::string read_in_box(const imaging::GrayImage& gray, const imaging::BBox& box, const ocr::GlyphAtlas& atlas);

struct OcrImageResult {
  std::string id;
  synth::NoiseTier tier = synth::NoiseTier::Clean;
  std::string truth;
  std::string truth_box_text;   ///< OCR isolated from detection
  std::string end_to_end_text;  ///< read_plate on the whole scene
  double pipeline_ms = 0.0;
};

struct OcrTierReport {
  synth::NoiseTier tier = synth::NoiseTier::Clean;
  std::size_t images = 0;
  std::size_t truth_box_correct = 0;
  std::size_t end_to_end_correct = 0;
  double truth_box_accuracy = 0.0;
  double end_to_end_accuracy = 0.0;
  double median_pipeline_ms = 0.0;
};

struct OcrReport {
  std::vector<OcrImageResult> images;  ///< manifest order
  std::vector<OcrTierReport> tiers;    ///< tiers present, clean first
  ocr::ConfusionMatrix confusion;      ///< from the truth-box reads
};

/// Exact-string OCR accuracy over a manifest. Throws anpr::MissingImage.
OcrReport evaluate_ocr(const std::vector<synth::CorpusManifestEntry>& manifest, const std::filesystem::path& base_dir,
                       const anpr::Recognizer& recognizer, const ocr::GlyphAtlas& atlas, unsigned jobs = 1);

/// One summary record per tier, one JSON object per line.
std::string ocr_report_jsonl(const OcrReport& report);

}  // namespace plategate

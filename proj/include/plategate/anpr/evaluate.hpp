#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plategate/anpr/recognizer.hpp"
#include "plategate/synth/corpus.hpp"

namespace plategate::anpr {

class MissingImage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// IoU at or above which a detection counts as a hit.
inline constexpr double kHitIou = 0.7;

struct ImageResult {
  std::string id;
  synth::NoiseTier tier = synth::NoiseTier::Clean;
  std::size_t detections = 0;
  double best_iou = 0.0;  ///< best over all returned boxes, 0 when none
  bool hit = false;
  double elapsed_ms = 0.0;
};

struct TierReport {
  synth::NoiseTier tier = synth::NoiseTier::Clean;
  std::size_t images = 0;
  std::size_t hits = 0;
  double detection_rate = 0.0;
  double mean_iou = 0.0;
  double mean_elapsed_ms = 0.0;
};

struct DetectorReport {
  std::string recognizer;
  bool empty_manifest = true;  ///< rates are undefined when set
  std::vector<ImageResult> images;  ///< manifest order
  std::vector<TierReport> tiers;    ///< clean first, then noisy; only tiers present
};

/// Runs the recognizer over every manifest image (resolved against base_dir).
/// Per-image work may fan out over `jobs` threads; results keep manifest order.
DetectorReport evaluate_detector(const Recognizer& recognizer, const std::vector<synth::CorpusManifestEntry>& manifest,
                                 const std::filesystem::path& base_dir, unsigned jobs = 1);

/// Per-image records followed by one summary record per tier, one JSON object per line.
std::string report_jsonl(const DetectorReport& report);

}  // namespace plategate::anpr

#include "plategate/anpr/evaluate.hpp"

#include <nlohmann/json.hpp>

#include "plategate/imaging/pnm.hpp"
#include "plategate/parallel.hpp"

namespace plategate::anpr {

DetectorReport evaluate_detector(const Recognizer& recognizer, const std::vector<synth::CorpusManifestEntry>& manifest,
                                 const std::filesystem::path& base_dir, unsigned jobs) {
  DetectorReport report;
  report.recognizer = recognizer.name();
  report.empty_manifest = manifest.empty();
  if (manifest.empty()) return report;

  for (const auto& entry : manifest)
    if (!std::filesystem::exists(base_dir / entry.image_path))
      throw MissingImage("manifest image not found: " + (base_dir / entry.image_path).string());

  report.images.resize(manifest.size());
  parallel_for(manifest.size(), jobs, [&](std::size_t i) {
    const auto& entry = manifest[i];
    const imaging::Image img = imaging::read_image(base_dir / entry.image_path);
    const TimedDetections timed = detect_timed(recognizer, img);
    ImageResult& r = report.images[i];
    r.id = entry.id;
    r.tier = entry.tier;
    r.detections = timed.detections.size();
    r.elapsed_ms = timed.elapsed_seconds * 1e3;
    for (const auto& d : timed.detections) r.best_iou = std::max(r.best_iou, imaging::iou(d.bbox, entry.truth_bbox));
    r.hit = r.best_iou >= kHitIou;
  });

  for (synth::NoiseTier tier : {synth::NoiseTier::Clean, synth::NoiseTier::Noisy}) {
    TierReport t;
    t.tier = tier;
    for (const auto& r : report.images) {
      if (r.tier != tier) continue;
      ++t.images;
      t.hits += r.hit ? 1 : 0;
      t.mean_iou += r.best_iou;
      t.mean_elapsed_ms += r.elapsed_ms;
    }
    if (t.images == 0) continue;
    t.detection_rate = static_cast<double>(t.hits) / t.images;
    t.mean_iou /= t.images;
    t.mean_elapsed_ms /= t.images;
    report.tiers.push_back(t);
  }
  return report;
}

std::string report_jsonl(const DetectorReport& report) {
  std::string out;
  if (report.empty_manifest) {
    nlohmann::ordered_json j{{"record", "summary"}, {"recognizer", report.recognizer}, {"status", "EmptyManifest"}};
    return j.dump() + "\n";
  }
  for (const auto& r : report.images) {
    nlohmann::ordered_json j{{"record", "image"},       {"id", r.id},
                             {"tier", to_string(r.tier)}, {"detections", r.detections},
                             {"best_iou", r.best_iou},  {"hit", r.hit},
                             {"elapsed_ms", r.elapsed_ms}};
    out += j.dump() + "\n";
  }
  for (const auto& t : report.tiers) {
    nlohmann::ordered_json j{{"record", "summary"},
                             {"recognizer", report.recognizer},
                             {"metric", "hit = best IoU >= 0.7"},
                             {"tier", to_string(t.tier)},
                             {"images", t.images},
                             {"detection_rate", t.detection_rate},
                             {"mean_iou", t.mean_iou},
                             {"mean_elapsed_ms", t.mean_elapsed_ms}};
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace plategate::anpr

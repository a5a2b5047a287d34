#include "plategate/pipeline.hpp"

#include <algorithm>
#include <chrono>

#include <nlohmann/json.hpp>

#include "plategate/anpr/evaluate.hpp"
#include "plategate/anpr/rectify.hpp"
#include "plategate/imaging/pnm.hpp"
#include "plategate/parallel.hpp"
#include "plategate/imaging/ops.hpp"
#include "plategate/ocr/segment.hpp"
#include "plategate/plate_grammar.hpp"

namespace plategate {

PipelineResult read_plate(const imaging::Image& img, const anpr::Recognizer& recognizer,
                          const ocr::GlyphAtlas& atlas, std::size_t max_candidates,
                          const ocr::RecognizeOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  PipelineResult out;
  out.detections = recognizer.detect(img);
  const imaging::GrayImage gray = imaging::to_grayscale(img);

  const std::size_t n = std::min(max_candidates, out.detections.size());
  for (std::size_t i = 0; i < n; ++i) {
    const anpr::Detection& det = out.detections[i];
    std::optional<ocr::PlateReading> reading;
    try {
      reading = ocr::recognize_plate(anpr::rectify_and_normalize(gray, det), atlas, options);
    } catch (const anpr::DegenerateCrop&) {
    } catch (const ocr::NoCharacters&) {
    } catch (const imaging::DegenerateHistogram&) {
    }
    if (!reading) continue;
    const bool valid = is_valid_plate(reading->text);
    if (!out.reading || valid) {
      out.chosen = det;
      out.reading = std::move(reading);
    }
    if (valid) break;
  }
  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.reading) out.reading->elapsed_seconds = out.elapsed_seconds;
  return out;
}

std::string read_in_box(const imaging::GrayImage& gray, const imaging::BBox& box, const ocr::GlyphAtlas& atlas) {
  anpr::Detection det;
  det.bbox = box;
  try {
    return ocr::recognize_plate(anpr::rectify_and_normalize(gray, det), atlas).text;
  } catch (const anpr::DegenerateCrop&) {
  } catch (const ocr::NoCharacters&) {
  } catch (const imaging::DegenerateHistogram&) {
  }
  return {};
}

OcrReport evaluate_ocr(const std::vector<synth::CorpusManifestEntry>& manifest, const std::filesystem::path& base_dir,
                       const anpr::Recognizer& recognizer, const ocr::GlyphAtlas& atlas, unsigned jobs) {
  for (const auto& entry : manifest)
    if (!std::filesystem::exists(base_dir / entry.image_path))
      throw anpr::MissingImage("manifest image not found: " + (base_dir / entry.image_path).string());

  OcrReport report;
  report.images.resize(manifest.size());
  parallel_for(manifest.size(), jobs, [&](std::size_t i) {
    const auto& entry = manifest[i];
    const imaging::Image img = imaging::read_image(base_dir / entry.image_path);
    OcrImageResult& r = report.images[i];
    r.id = entry.id;
    r.tier = entry.tier;
    r.truth = entry.truth_text;
    r.truth_box_text = read_in_box(imaging::to_grayscale(img), entry.truth_bbox, atlas);
    const PipelineResult full = read_plate(img, recognizer, atlas);
    if (full.reading) r.end_to_end_text = full.reading->text;
    r.pipeline_ms = full.elapsed_seconds * 1e3;
  });

  for (const auto& r : report.images) report.confusion.add(r.truth, r.truth_box_text);
  for (synth::NoiseTier tier : {synth::NoiseTier::Clean, synth::NoiseTier::Noisy}) {
    OcrTierReport t;
    t.tier = tier;
    std::vector<double> ms;
    for (const auto& r : report.images) {
      if (r.tier != tier) continue;
      ++t.images;
      t.truth_box_correct += r.truth_box_text == r.truth ? 1 : 0;
      t.end_to_end_correct += r.end_to_end_text == r.truth ? 1 : 0;
      ms.push_back(r.pipeline_ms);
    }
    if (t.images == 0) continue;
    t.truth_box_accuracy = static_cast<double>(t.truth_box_correct) / t.images;
    t.end_to_end_accuracy = static_cast<double>(t.end_to_end_correct) / t.images;
    std::nth_element(ms.begin(), ms.begin() + ms.size() / 2, ms.end());
    t.median_pipeline_ms = ms[ms.size() / 2];
    report.tiers.push_back(t);
  }
  return report;
}

std::string ocr_report_jsonl(const OcrReport& report) {
  std::string out;
  for (const OcrTierReport& t : report.tiers) {
    const nlohmann::ordered_json j = {{"record", "ocr_summary"},
                              {"tier", synth::to_string(t.tier)},
                              {"images", t.images},
                              {"truth_box_accuracy", t.truth_box_accuracy},
                              {"end_to_end_accuracy", t.end_to_end_accuracy},
                              {"median_pipeline_ms", t.median_pipeline_ms}};
    out += j.dump() + '\n';
  }
  return out;
}

}  // namespace plategate

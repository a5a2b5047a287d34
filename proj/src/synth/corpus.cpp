#include "plategate/synth/corpus.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "plategate/imaging/pnm.hpp"
#include "plategate/parallel.hpp"
#include "plategate/plate_grammar.hpp"

namespace plategate::synth {
namespace {

constexpr int kCanvasW = 640;
constexpr int kCanvasH = 480;
constexpr int kEdgeMargin = 8;

std::string scene_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "scene_%05zu", index);
  return buf;
}

}  // namespace

std::string to_string(NoiseTier tier) { return tier == NoiseTier::Clean ? "clean" : "noisy"; }

NoiseTier parse_tier(const std::string& name) {
  if (name == "clean") return NoiseTier::Clean;
  if (name == "noisy") return NoiseTier::Noisy;
  throw std::invalid_argument("unknown noise tier: " + name);
}

TierProfile tier_profile(NoiseTier tier) noexcept {
  return tier == NoiseTier::Clean ? TierProfile{0.0, 3.0} : TierProfile{8.0, 12.0};
}

std::string random_plate_text(Rng& rng) {
  std::string text;
  auto letter = [&] { return static_cast<char>('A' + rng.uniform_int(0, 25)); };
  auto digit = [&] { return static_cast<char>('0' + rng.uniform_int(0, 9)); };
  text += letter();
  text += letter();
  text += digit();
  text += digit();
  const int series = rng.uniform_int(1, 2);
  for (int i = 0; i < series; ++i) text += letter();
  for (int i = 0; i < 4; ++i) text += digit();
  return text;
}

GeneratedScene generate_scene(std::uint64_t seed, std::size_t index, NoiseTier tier) {
  Rng rng(derive_seed(seed, index));
  const TierProfile profile = tier_profile(tier);

  GeneratedScene out;
  out.plate.text = random_plate_text(rng);
  out.plate.fg = static_cast<std::uint8_t>(rng.uniform_int(10, 50));
  out.plate.bg = static_cast<std::uint8_t>(rng.uniform_int(190, 240));
  out.plate.font_id = rng.uniform_int(0, 1);

  SceneSpec& s = out.scene;
  s.canvas_w = kCanvasW;
  s.canvas_h = kCanvasH;
  s.scale = rng.uniform(0.85, 1.15);
  s.rotation_deg = rng.uniform(-profile.max_rotation_deg, profile.max_rotation_deg);
  s.noise_sigma = profile.noise_sigma;
  s.distractor_count = rng.uniform_int(2, 5);
  const imaging::BBox rel = transformed_plate_bounds(out.plate.plate_w, out.plate.plate_h, s);
  s.plate_x = rng.uniform_int(kEdgeMargin - rel.x, kCanvasW - kEdgeMargin - rel.right());
  s.plate_y = rng.uniform_int(kEdgeMargin - rel.y, kCanvasH - kEdgeMargin - rel.bottom());
  s.rng_seed = rng.next();

  out.result = compose_scene(render_plate(out.plate), s);
  out.entry.id = scene_id(index);
  out.entry.image_path = "images/" + out.entry.id + ".pgm";
  out.entry.truth_text = out.plate.text;
  out.entry.truth_bbox = out.result.truth_bbox;
  out.entry.tier = tier;
  return out;
}

std::vector<CorpusManifestEntry> generate_corpus(std::uint64_t seed, std::size_t count, NoiseTier tier,
                                                 const std::filesystem::path& out_dir, unsigned jobs) {
  if (count < 1) throw std::invalid_argument("corpus count must be >= 1");
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "images", ec);
  if (ec) throw IoFailure("cannot create corpus directory " + out_dir.string() + ": " + ec.message());

  std::vector<CorpusManifestEntry> entries(count);
  parallel_for(count, jobs, [&](std::size_t i) {
    GeneratedScene g = generate_scene(seed, i, tier);
    try {
      imaging::write_gray(g.result.image, out_dir / g.entry.image_path);
    } catch (const imaging::ImagingError& e) {
      throw IoFailure(e.what());
    }
    entries[i] = std::move(g.entry);
  });
  write_manifest(entries, out_dir / "manifest.jsonl");
  return entries;
}

std::string manifest_line(const CorpusManifestEntry& e) {
  nlohmann::ordered_json j;
  j["id"] = e.id;
  j["image"] = e.image_path;
  j["text"] = e.truth_text;
  j["bbox"] = {e.truth_bbox.x, e.truth_bbox.y, e.truth_bbox.w, e.truth_bbox.h};
  j["tier"] = to_string(e.tier);
  return j.dump();
}

CorpusManifestEntry parse_manifest_line(const std::string& line) {
  const auto j = nlohmann::json::parse(line);
  CorpusManifestEntry e;
  e.id = j.at("id").get<std::string>();
  e.image_path = j.at("image").get<std::string>();
  e.truth_text = j.at("text").get<std::string>();
  const auto& b = j.at("bbox");
  if (!b.is_array() || b.size() != 4) throw std::invalid_argument("manifest bbox must be [x, y, w, h]");
  e.truth_bbox = {b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), b[3].get<int>()};
  e.tier = parse_tier(j.at("tier").get<std::string>());
  return e;
}

void write_manifest(const std::vector<CorpusManifestEntry>& entries, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write manifest " + path.string());
  for (const auto& e : entries) out << manifest_line(e) << '\n';
  if (!out) throw IoFailure("short write on manifest " + path.string());
}

std::vector<CorpusManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open manifest " + path.string());
  std::vector<CorpusManifestEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    entries.push_back(parse_manifest_line(line));
  }
  return entries;
}

}  // namespace plategate::synth

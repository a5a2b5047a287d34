#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "plategate/imaging/geometry.hpp"
#include "plategate/synth/plate.hpp"
#include "plategate/synth/rng.hpp"
#include "plategate/synth/scene.hpp"

namespace plategate::synth {

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NoiseTier { Clean, Noisy };

std::string to_string(NoiseTier tier);
NoiseTier parse_tier(const std::string& name);  ///< "clean" | "noisy"

struct TierProfile {
  double noise_sigma;
  double max_rotation_deg;
};

/// clean: sigma 0, |rotation| <= 3 deg; noisy: sigma 8, |rotation| <= 12 deg.
TierProfile tier_profile(NoiseTier tier) noexcept;

struct CorpusManifestEntry {
  std::string id;
  std::string image_path;  ///< relative to the manifest's directory
  std::string truth_text;
  imaging::BBox truth_bbox;
  NoiseTier tier = NoiseTier::Clean;

  bool operator==(const CorpusManifestEntry&) const = default;
};

struct GeneratedScene {
  PlateSpec plate;
  SceneSpec scene;
  Scene result;
  CorpusManifestEntry entry;
};

/// Random grammar-valid plate text.
std::string random_plate_text(Rng& rng);

/// Scene `index` of the corpus for `seed`; depends only on (seed, index, tier).
GeneratedScene generate_scene(std::uint64_t seed, std::size_t index, NoiseTier tier);

/// Writes images/<id>.pgm and manifest.jsonl under out_dir. count must be >= 1.
std::vector<CorpusManifestEntry> generate_corpus(std::uint64_t seed, std::size_t count, NoiseTier tier,
                                                 const std::filesystem::path& out_dir, unsigned jobs = 0);

std::string manifest_line(const CorpusManifestEntry& entry);
CorpusManifestEntry parse_manifest_line(const std::string& line);
void write_manifest(const std::vector<CorpusManifestEntry>& entries, const std::filesystem::path& path);
std::vector<CorpusManifestEntry> read_manifest(const std::filesystem::path& path);

}  // namespace plategate::synth

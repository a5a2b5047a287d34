#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "plategate/imaging/image.hpp"
#include "plategate/synth/corpus.hpp"

namespace plategate::ocr {

/// Truth x predicted character counts plus a rejection row that counts the
/// truth characters of reads whose length did not match.
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, 36>, 36> counts{};
  std::array<std::uint64_t, 36> rejected{};

  /// Aligns by position; a length mismatch goes to the rejection row.
  void add(const std::string& truth, const std::string& predicted);

  std::uint64_t diagonal() const noexcept;
  std::uint64_t off_diagonal() const noexcept;
  std::uint64_t off_diagonal_within_classes() const noexcept;
  bool is_diagonal() const noexcept { return off_diagonal() == 0; }

  /// 37 data rows (A-Z, 0-9, rejected) after a header row.
  std::string to_csv() const;
};

/// Reads a scene and returns the predicted text ("" when nothing was read).
using PlatePipeline = std::function<std::string(const imaging::Image&, const synth::CorpusManifestEntry&)>;

ConfusionMatrix confusion_matrix(const std::vector<synth::CorpusManifestEntry>& manifest,
                                 const std::filesystem::path& base_dir, const PlatePipeline& pipeline);

}  // namespace plategate::ocr

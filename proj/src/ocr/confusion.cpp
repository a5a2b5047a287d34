#include "plategate/ocr/confusion.hpp"

#include <sstream>

#include "plategate/imaging/pnm.hpp"
#include "plategate/plate_grammar.hpp"

namespace plategate::ocr {

void ConfusionMatrix::add(const std::string& truth, const std::string& predicted) {
  if (truth.size() != predicted.size()) {
    for (char t : truth)
      if (int ti = alphabet_index(t); ti >= 0) ++rejected[ti];
    return;
  }
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int ti = alphabet_index(truth[i]), pi = alphabet_index(predicted[i]);
    if (ti < 0) continue;
    if (pi < 0) {
      ++rejected[ti];
    } else {
      ++counts[ti][pi];
    }
  }
}

std::uint64_t ConfusionMatrix::diagonal() const noexcept {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) n += counts[i][i];
  return n;
}

std::uint64_t ConfusionMatrix::off_diagonal() const noexcept {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    for (std::size_t j = 0; j < counts.size(); ++j)
      if (i != j) n += counts[i][j];
  return n;
}

std::uint64_t ConfusionMatrix::off_diagonal_within_classes() const noexcept {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    for (std::size_t j = 0; j < counts.size(); ++j)
      if (confusable(kPlateAlphabet[i], kPlateAlphabet[j])) n += counts[i][j];
  return n;
}

std::string ConfusionMatrix::to_csv() const {
  std::ostringstream out;
  out << "truth\\predicted";
  for (char c : kPlateAlphabet) out << ',' << c;
  out << '\n';
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out << kPlateAlphabet[i];
    for (auto v : counts[i]) out << ',' << v;
    out << '\n';
  }
  out << "rejected";
  for (auto v : rejected) out << ',' << v;
  out << '\n';
  return out.str();
}

ConfusionMatrix confusion_matrix(const std::vector<synth::CorpusManifestEntry>& manifest,
                                 const std::filesystem::path& base_dir, const PlatePipeline& pipeline) {
  ConfusionMatrix m;
  for (const auto& entry : manifest) {
    const imaging::Image img = imaging::read_image(base_dir / entry.image_path);
    m.add(entry.truth_text, pipeline(img, entry));
  }
  return m;
}

}  // namespace plategate::ocr

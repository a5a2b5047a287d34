#include "plategate/park/match.hpp"

#include <algorithm>
#include <cstdlib>

#include "plategate/plate_grammar.hpp"

namespace plategate::park {

int weighted_edit_halves(std::string_view a, std::string_view b) {
  // Single-row Wagner-Fischer.
  std::vector<int> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(2 * j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(2 * i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const char x = a[i - 1];
      const char y = b[j - 1];
      const int sub = x == y ? 0 : (confusable(x, y) ? 1 : 2);
      const int next = std::min({row[j] + 2, row[j - 1] + 2, diag + sub});
      diag = row[j];
      row[j] = next;
    }
  }
  return row[b.size()];
}

const char* to_string(MatchOutcome m) noexcept {
  switch (m) {
    case MatchOutcome::Exact: return "exact";
    case MatchOutcome::Fuzzy: return "fuzzy";
    case MatchOutcome::NoMatch: return "no_match";
    case MatchOutcome::Ambiguous: return "ambiguous";
  }
  return "?";
}

void MatchScan::offer(std::string_view plate) {
  if (exact_) return;
  if (plate == reading_) {
    exact_ = true;
    best_ = 0;
    best_plates_.assign(1, std::string(plate));
    return;
  }
  // Every unit of length difference costs a full insert or delete.
  const auto len_gap = std::abs(static_cast<long>(plate.size()) - static_cast<long>(reading_.size()));
  if (2 * len_gap > kMaxFuzzyHalves) return;
  const int cost = weighted_edit_halves(reading_, plate);
  if (cost > kMaxFuzzyHalves) return;
  if (best_ < 0 || cost < best_) {
    best_ = cost;
    best_plates_.assign(1, std::string(plate));
  } else if (cost == best_) {
    best_plates_.emplace_back(plate);
  }
}

MatchResult MatchScan::result() const {
  MatchResult r;
  if (exact_) {
    r.outcome = MatchOutcome::Exact;
    r.matched_plate = best_plates_.front();
    return r;
  }
  if (best_ < 0) return r;
  r.cost_halves = best_;
  if (best_plates_.size() == 1) {
    r.outcome = MatchOutcome::Fuzzy;
    r.matched_plate = best_plates_.front();
  } else {
    r.outcome = MatchOutcome::Ambiguous;
    r.candidates = best_plates_;
  }
  return r;
}

MatchResult match_plate(std::string_view reading, std::span<const std::string> registry) {
  MatchScan scan(reading);
  for (const std::string& plate : registry) scan.offer(plate);
  return scan.result();
}

}  // namespace plategate::park

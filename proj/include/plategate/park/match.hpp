#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace plategate::park {

/// Edit distance in half units: insert/delete 2, substitution inside a
/// confusion group 1, any other substitution 2. Integers keep ties exact.
int weighted_edit_halves(std::string_view a, std::string_view b);

inline double weighted_edit_distance(std::string_view a, std::string_view b) {
  return weighted_edit_halves(a, b) / 2.0;
}

/// Largest accepted fuzzy cost (1.0) in half units.
inline constexpr int kMaxFuzzyHalves = 2;

enum class MatchOutcome { Exact, Fuzzy, NoMatch, Ambiguous };

const char* to_string(MatchOutcome m) noexcept;

struct MatchResult {
  MatchOutcome outcome = MatchOutcome::NoMatch;
  int cost_halves = 0;
  std::optional<std::string> matched_plate;  ///< set for Exact and Fuzzy only
  std::vector<std::string> candidates;       ///< tied plates when Ambiguous, in offer order

  double cost() const noexcept { return cost_halves / 2.0; }
  bool matched() const noexcept { return matched_plate.has_value(); }
  bool operator==(const MatchResult&) const = default;
};

/// Streams registry plates past one reading and keeps the running minimum.
class MatchScan {
 public:
  explicit MatchScan(std::string_view reading) : reading_(reading) {}
  void offer(std::string_view plate);
  MatchResult result() const;

 private:
  std::string reading_;
  bool exact_ = false;
  int best_ = -1;
  std::vector<std::string> best_plates_;
};

MatchResult match_plate(std::string_view reading, std::span<const std::string> registry);

}  // namespace plategate::park

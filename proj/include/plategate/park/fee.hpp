#pragma once

#include <cstdint>
#include <stdexcept>

namespace plategate::park {

using Timestamp = std::int64_t;  ///< Unix seconds, caller supplied
using Money = std::int64_t;      ///< minor currency units

class InvalidSchedule : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Tiered tariff: free up to grace_min, flat base_price up to base_min, then
/// block_price for every started block of block_min minutes.
struct RateSchedule {
  std::int64_t grace_min = 10;
  std::int64_t base_min = 60;
  Money base_price = 2000;
  std::int64_t block_min = 30;
  Money block_price = 1000;

  bool valid() const noexcept {
    return grace_min >= 0 && base_min > grace_min && base_price >= 0 && block_min >= 1 && block_price >= 0;
  }
  void validate() const;  ///< throws InvalidSchedule

  bool operator==(const RateSchedule&) const = default;
};

/// Fee for a stay of duration_min whole minutes. Requires a valid schedule
/// and duration_min >= 0.
Money compute_fee(std::int64_t duration_min, const RateSchedule& s);

/// Stay length rounded up to whole minutes; 0 when exit == entry.
inline std::int64_t duration_minutes(Timestamp entry, Timestamp exit) noexcept {
  const std::int64_t seconds = exit - entry;
  return seconds <= 0 ? 0 : (seconds + 59) / 60;
}

}  // namespace plategate::park

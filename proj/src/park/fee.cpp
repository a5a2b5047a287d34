#include "plategate/park/fee.hpp"

namespace plategate::park {

void RateSchedule::validate() const {
  if (!valid()) throw InvalidSchedule("rate schedule needs grace >= 0, base > grace, block >= 1, prices >= 0");
}

Money compute_fee(std::int64_t duration_min, const RateSchedule& s) {
  if (duration_min <= s.grace_min) return 0;
  if (duration_min <= s.base_min) return s.base_price;
  const std::int64_t over = duration_min - s.base_min;
  const std::int64_t blocks = (over + s.block_min - 1) / s.block_min;
  return s.base_price + blocks * s.block_price;
}

}  // namespace plategate::park

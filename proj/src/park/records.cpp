#include "plategate/park/records.hpp"

#include <algorithm>

namespace plategate::park {

bool is_e164(std::string_view phone) noexcept {
  if (phone.size() < 8 || phone.size() > 16 || phone[0] != '+' || phone[1] == '0') return false;
  return std::all_of(phone.begin() + 1, phone.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_valid_user_id(std::string_view id) noexcept {
  if (id.empty() || id.size() > 64) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' || c == '_' ||
           c == '-';
  });
}

const char* to_string(SessionState s) noexcept { return s == SessionState::Active ? "active" : "closed"; }

const char* to_string(TransactionKind k) noexcept { return k == TransactionKind::Topup ? "topup" : "charge"; }

const char* to_string(NotificationKind k) noexcept { return k == NotificationKind::Entry ? "entry" : "exit"; }

Money WalletAccount::balance() const noexcept {
  Money total = 0;
  for (const Transaction& t : transactions) total += t.signed_amount();
  return total;
}

}  // namespace plategate::park

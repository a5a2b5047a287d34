#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plategate/park/fee.hpp"

namespace plategate::park {

struct RegistrationRecord {
  std::string plate;
  std::string user_id;
  std::string phone;
  Timestamp created_at = 0;
  bool operator==(const RegistrationRecord&) const = default;
};

/// "+" followed by 7 to 15 digits, the first non-zero.
bool is_e164(std::string_view phone) noexcept;

/// Non-empty, at most 64 chars of [A-Za-z0-9._-] so ids embed in URL paths.
bool is_valid_user_id(std::string_view id) noexcept;

enum class SessionState { Active, Closed };
const char* to_string(SessionState s) noexcept;

struct ParkingSession {
  std::string session_id;
  std::string plate;
  std::string user_id;
  Timestamp entry_ts = 0;
  std::optional<Timestamp> exit_ts;  ///< present iff Closed
  SessionState state = SessionState::Active;
  bool operator==(const ParkingSession&) const = default;
};

enum class TransactionKind { Topup, Charge };
const char* to_string(TransactionKind k) noexcept;

struct Transaction {
  std::int64_t seq = 0;
  TransactionKind kind = TransactionKind::Topup;
  Money amount = 0;  ///< always > 0; the kind carries the sign
  Timestamp ts = 0;
  std::string ref;  ///< session id for charges

  Money signed_amount() const noexcept { return kind == TransactionKind::Topup ? amount : -amount; }
  bool operator==(const Transaction&) const = default;
};

struct WalletAccount {
  std::string user_id;
  std::vector<Transaction> transactions;

  Money balance() const noexcept;
  bool delinquent() const noexcept { return balance() < 0; }
  bool operator==(const WalletAccount&) const = default;
};

struct TripRecord {
  std::string session_id;
  std::string plate;
  std::string user_id;
  Timestamp entry_ts = 0;
  Timestamp exit_ts = 0;
  std::int64_t duration_min = 0;
  Money fee = 0;
  bool operator==(const TripRecord&) const = default;
};

enum class NotificationKind { Entry, Exit };
const char* to_string(NotificationKind k) noexcept;

/// Stand-in for the SMS/app message sent to the registered phone.
struct Notification {
  std::int64_t seq = 0;
  std::string user_id;
  NotificationKind kind = NotificationKind::Entry;
  std::string phone;
  std::string session_id;
  std::string plate;
  Timestamp entry_ts = 0;
  std::optional<Timestamp> exit_ts;
  std::optional<std::int64_t> duration_min;
  std::optional<Money> fee;
  Timestamp created_at = 0;
  bool operator==(const Notification&) const = default;
};

}  // namespace plategate::park

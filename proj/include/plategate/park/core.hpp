#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plategate/park/fee.hpp"
#include "plategate/park/match.hpp"
#include "plategate/park/records.hpp"

namespace plategate::park {

enum class CommandKind { Entry, Exit, Registration, Topup, Review };
const char* to_string(CommandKind k) noexcept;

enum class ReviewAction { Approve, Reject };

/// One state-changing request. Only the fields relevant to `kind` are read.
struct Command {
  CommandKind kind = CommandKind::Entry;
  Timestamp ts = 0;
  std::string idempotency_key;  ///< empty means no de-duplication

  std::string plate;  ///< reading (entry/exit), plate to register, or plate chosen on approve
  double confidence = 1.0;
  std::string user_id;
  std::string phone;
  Money amount = 0;
  std::string review_id;
  ReviewAction action = ReviewAction::Approve;

  static Command entry(std::string reading, Timestamp ts, std::string key = {}, double confidence = 1.0);
  static Command exit(std::string reading, Timestamp ts, std::string key = {}, double confidence = 1.0);
  static Command registration(std::string plate, std::string user_id, std::string phone, Timestamp ts);
  static Command topup(std::string user_id, Money amount, Timestamp ts, std::string key = {});
  static Command approve(std::string review_id, std::string plate, Timestamp ts);
  static Command reject(std::string review_id, Timestamp ts);

  bool operator==(const Command&) const = default;
};

enum class Status {
  // accepted
  Opened,
  Closed,
  ManualReview,
  Registered,
  ToppedUp,
  Approved,
  Rejected,
  // refused
  InvalidPlate,
  UnregisteredPlate,
  DuplicateEntry,
  ExitWithoutEntry,
  OutOfOrder,
  DuplicatePlate,
  InvalidUserId,
  InvalidPhone,
  NonPositiveAmount,
  UnknownUser,
  UnknownReview,
  ReviewResolved,
  NotACandidate,
};

/// snake_case code used on the wire.
const char* to_string(Status s) noexcept;
inline bool accepted(Status s) noexcept { return s <= Status::Rejected; }

enum class ReviewStatus { Pending, Approved, Rejected };
const char* to_string(ReviewStatus s) noexcept;

/// A reading that matched several registrations equally well, parked for an operator.
struct ReviewItem {
  std::string review_id;
  CommandKind event = CommandKind::Entry;  ///< Entry or Exit
  std::string reading;
  double confidence = 1.0;
  Timestamp ts = 0;
  std::vector<std::string> candidates;
  ReviewStatus status = ReviewStatus::Pending;
  std::optional<std::string> resolved_plate;
  std::optional<std::string> session_id;
  std::optional<Timestamp> resolved_at;
  bool operator==(const ReviewItem&) const = default;
};

/// Everything a command would change, computed without touching state.
struct Outcome {
  Status status = Status::InvalidPlate;
  bool replayed = false;  ///< served from the idempotency table
  MatchResult match;
  std::optional<ParkingSession> session;
  std::optional<TripRecord> trip;
  std::optional<Transaction> transaction;
  std::optional<Notification> notification;
  std::optional<ReviewItem> review;
  std::optional<RegistrationRecord> registration;

  bool ok() const noexcept { return accepted(status); }
  bool operator==(const Outcome&) const = default;
};

/// Registry, sessions, wallets, trips, notifications and the review queue.
///
/// Mutation is split in two so a caller can persist a command between
/// deciding and applying it: plan() is const and never throws on bad input,
/// commit() installs a plan and cannot fail. Callers serialize both.
class ParkCore {
 public:
  explicit ParkCore(RateSchedule schedule = {});

  Outcome plan(const Command& cmd) const;
  /// No-op unless `out` is an accepted, non-replayed plan of `cmd` made
  /// against the current state.
  void commit(const Command& cmd, const Outcome& out);
  Outcome execute(const Command& cmd) {
    Outcome out = plan(cmd);
    commit(cmd, out);
    return out;
  }

  const RateSchedule& schedule() const noexcept { return schedule_; }
  /// Applies to exits from now on; closed trips keep their fees.
  /// Throws InvalidSchedule.
  void set_schedule(const RateSchedule& schedule) {
    schedule.validate();
    schedule_ = schedule;
  }
  MatchResult match(const std::string& reading) const;

  bool has_user(const std::string& user_id) const { return wallets_.contains(user_id); }
  std::optional<RegistrationRecord> registration(const std::string& plate) const;
  std::vector<RegistrationRecord> registrations() const;
  std::vector<ParkingSession> sessions(std::optional<SessionState> state = std::nullopt) const;
  std::optional<ParkingSession> active_session(const std::string& plate) const;
  std::size_t active_count() const noexcept { return active_by_plate_.size(); }
  /// nullptr for an unknown user.
  const WalletAccount* wallet(const std::string& user_id) const;
  /// Closed stays of one user, newest exit first.
  std::vector<TripRecord> trips(const std::string& user_id) const;
  const std::vector<TripRecord>& all_trips() const noexcept { return trips_; }
  /// Notifications with seq > since, ascending.
  std::vector<Notification> notifications(const std::string& user_id, std::int64_t since = 0) const;
  std::size_t notification_count() const noexcept { return notifications_.size(); }
  std::vector<ReviewItem> reviews(std::optional<ReviewStatus> status = std::nullopt) const;

  bool operator==(const ParkCore&) const = default;

 private:
  Outcome plan_vehicle(CommandKind kind, const std::string& plate, Timestamp ts, Outcome out) const;
  Outcome plan_review(const Command& cmd) const;

  RateSchedule schedule_;
  std::map<std::string, RegistrationRecord> registry_;
  std::map<std::string, WalletAccount> wallets_;
  std::map<std::string, ParkingSession> sessions_;
  std::map<std::string, std::string> active_by_plate_;
  std::map<std::string, Timestamp> last_ts_;
  std::vector<TripRecord> trips_;
  std::vector<Notification> notifications_;
  std::map<std::string, ReviewItem> reviews_;
  std::map<std::string, Outcome> idempotency_;
  std::int64_t next_txn_ = 1;
  std::int64_t next_note_ = 1;
};

}  // namespace plategate::park

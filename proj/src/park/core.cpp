#include "plategate/park/core.hpp"

#include <algorithm>
#include <cstdio>

#include "plategate/plate_grammar.hpp"

namespace plategate::park {

namespace {

std::string numbered(char prefix, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%06zu", prefix, n);
  return buf;
}

Outcome refused(Status s) {
  Outcome out;
  out.status = s;
  return out;
}

}  // namespace

const char* to_string(CommandKind k) noexcept {
  switch (k) {
    case CommandKind::Entry: return "entry";
    case CommandKind::Exit: return "exit";
    case CommandKind::Registration: return "registration";
    case CommandKind::Topup: return "topup";
    case CommandKind::Review: return "review";
  }
  return "?";
}

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Opened: return "opened";
    case Status::Closed: return "closed";
    case Status::ManualReview: return "manual_review";
    case Status::Registered: return "registered";
    case Status::ToppedUp: return "topped_up";
    case Status::Approved: return "approved";
    case Status::Rejected: return "rejected";
    case Status::InvalidPlate: return "invalid_plate";
    case Status::UnregisteredPlate: return "unregistered_plate";
    case Status::DuplicateEntry: return "duplicate_entry";
    case Status::ExitWithoutEntry: return "exit_without_entry";
    case Status::OutOfOrder: return "out_of_order";
    case Status::DuplicatePlate: return "duplicate_plate";
    case Status::InvalidUserId: return "invalid_user_id";
    case Status::InvalidPhone: return "invalid_phone";
    case Status::NonPositiveAmount: return "non_positive_amount";
    case Status::UnknownUser: return "unknown_user";
    case Status::UnknownReview: return "unknown_review";
    case Status::ReviewResolved: return "review_resolved";
    case Status::NotACandidate: return "not_a_candidate";
  }
  return "?";
}

const char* to_string(ReviewStatus s) noexcept {
  switch (s) {
    case ReviewStatus::Pending: return "pending";
    case ReviewStatus::Approved: return "approved";
    case ReviewStatus::Rejected: return "rejected";
  }
  return "?";
}

Command Command::entry(std::string reading, Timestamp ts, std::string key, double confidence) {
  Command c;
  c.kind = CommandKind::Entry;
  c.plate = std::move(reading);
  c.ts = ts;
  c.idempotency_key = std::move(key);
  c.confidence = confidence;
  return c;
}

Command Command::exit(std::string reading, Timestamp ts, std::string key, double confidence) {
  Command c = entry(std::move(reading), ts, std::move(key), confidence);
  c.kind = CommandKind::Exit;
  return c;
}

Command Command::registration(std::string plate, std::string user_id, std::string phone, Timestamp ts) {
  Command c;
  c.kind = CommandKind::Registration;
  c.plate = std::move(plate);
  c.user_id = std::move(user_id);
  c.phone = std::move(phone);
  c.ts = ts;
  return c;
}

Command Command::topup(std::string user_id, Money amount, Timestamp ts, std::string key) {
  Command c;
  c.kind = CommandKind::Topup;
  c.user_id = std::move(user_id);
  c.amount = amount;
  c.ts = ts;
  c.idempotency_key = std::move(key);
  return c;
}

Command Command::approve(std::string review_id, std::string plate, Timestamp ts) {
  Command c;
  c.kind = CommandKind::Review;
  c.action = ReviewAction::Approve;
  c.review_id = std::move(review_id);
  c.plate = std::move(plate);
  c.ts = ts;
  return c;
}

Command Command::reject(std::string review_id, Timestamp ts) {
  Command c;
  c.kind = CommandKind::Review;
  c.action = ReviewAction::Reject;
  c.review_id = std::move(review_id);
  c.ts = ts;
  return c;
}

ParkCore::ParkCore(RateSchedule schedule) : schedule_(schedule) { schedule_.validate(); }

MatchResult ParkCore::match(const std::string& reading) const {
  MatchScan scan(reading);
  for (const auto& [plate, record] : registry_) scan.offer(plate);
  return scan.result();
}

// Entry/exit against an already-resolved registered plate.
Outcome ParkCore::plan_vehicle(CommandKind kind, const std::string& plate, Timestamp ts, Outcome out) const {
  if (const auto it = last_ts_.find(plate); it != last_ts_.end() && ts < it->second) {
    out.status = Status::OutOfOrder;
    return out;
  }
  const RegistrationRecord& reg = registry_.at(plate);
  const auto active = active_by_plate_.find(plate);

  Notification note;
  note.seq = next_note_;
  note.user_id = reg.user_id;
  note.phone = reg.phone;
  note.plate = plate;
  note.created_at = ts;

  if (kind == CommandKind::Entry) {
    if (active != active_by_plate_.end()) {
      out.status = Status::DuplicateEntry;
      return out;
    }
    ParkingSession s{numbered('S', sessions_.size() + 1), plate, reg.user_id, ts, std::nullopt, SessionState::Active};
    note.kind = NotificationKind::Entry;
    note.session_id = s.session_id;
    note.entry_ts = ts;
    out.status = Status::Opened;
    out.session = std::move(s);
    out.notification = std::move(note);
    return out;
  }

  if (active == active_by_plate_.end()) {
    out.status = Status::ExitWithoutEntry;
    return out;
  }
  ParkingSession s = sessions_.at(active->second);
  s.exit_ts = ts;
  s.state = SessionState::Closed;
  const std::int64_t minutes = duration_minutes(s.entry_ts, ts);
  const Money fee = compute_fee(minutes, schedule_);

  out.trip = TripRecord{s.session_id, plate, s.user_id, s.entry_ts, ts, minutes, fee};
  if (fee > 0) out.transaction = Transaction{next_txn_, TransactionKind::Charge, fee, ts, s.session_id};
  note.kind = NotificationKind::Exit;
  note.session_id = s.session_id;
  note.entry_ts = s.entry_ts;
  note.exit_ts = ts;
  note.duration_min = minutes;
  note.fee = fee;
  out.status = Status::Closed;
  out.session = std::move(s);
  out.notification = std::move(note);
  return out;
}

Outcome ParkCore::plan_review(const Command& cmd) const {
  const auto it = reviews_.find(cmd.review_id);
  if (it == reviews_.end()) return refused(Status::UnknownReview);
  ReviewItem item = it->second;
  if (item.status != ReviewStatus::Pending) return refused(Status::ReviewResolved);

  Outcome out;
  if (cmd.action == ReviewAction::Reject) {
    item.status = ReviewStatus::Rejected;
    item.resolved_at = cmd.ts;
    out.status = Status::Rejected;
    out.review = std::move(item);
    return out;
  }
  if (std::find(item.candidates.begin(), item.candidates.end(), cmd.plate) == item.candidates.end() ||
      !registry_.contains(cmd.plate))
    return refused(Status::NotACandidate);

  // The stay is timed from the original camera event, not the approval.
  out.match.outcome = MatchOutcome::Exact;
  out.match.matched_plate = cmd.plate;
  out = plan_vehicle(item.event, cmd.plate, item.ts, std::move(out));
  if (!out.ok()) return out;
  item.status = ReviewStatus::Approved;
  item.resolved_plate = cmd.plate;
  item.session_id = out.session->session_id;
  item.resolved_at = cmd.ts;
  out.status = Status::Approved;
  out.review = std::move(item);
  return out;
}

Outcome ParkCore::plan(const Command& cmd) const {
  if (!cmd.idempotency_key.empty()) {
    if (const auto it = idempotency_.find(cmd.idempotency_key); it != idempotency_.end()) {
      Outcome again = it->second;
      again.replayed = true;
      return again;
    }
  }

  switch (cmd.kind) {
    case CommandKind::Registration: {
      if (!is_valid_plate(cmd.plate)) return refused(Status::InvalidPlate);
      if (!is_valid_user_id(cmd.user_id)) return refused(Status::InvalidUserId);
      if (!is_e164(cmd.phone)) return refused(Status::InvalidPhone);
      if (registry_.contains(cmd.plate)) return refused(Status::DuplicatePlate);
      Outcome out;
      out.status = Status::Registered;
      out.registration = RegistrationRecord{cmd.plate, cmd.user_id, cmd.phone, cmd.ts};
      return out;
    }
    case CommandKind::Topup: {
      if (!wallets_.contains(cmd.user_id)) return refused(Status::UnknownUser);
      if (cmd.amount <= 0) return refused(Status::NonPositiveAmount);
      Outcome out;
      out.status = Status::ToppedUp;
      out.transaction = Transaction{next_txn_, TransactionKind::Topup, cmd.amount, cmd.ts, {}};
      return out;
    }
    case CommandKind::Review:
      return plan_review(cmd);
    case CommandKind::Entry:
    case CommandKind::Exit:
      break;
  }

  Outcome out;
  out.match = match(cmd.plate);
  switch (out.match.outcome) {
    case MatchOutcome::Exact:
    case MatchOutcome::Fuzzy: {
      const std::string plate = *out.match.matched_plate;
      return plan_vehicle(cmd.kind, plate, cmd.ts, std::move(out));
    }
    case MatchOutcome::NoMatch:
      out.status = is_valid_plate(cmd.plate) ? Status::UnregisteredPlate : Status::InvalidPlate;
      return out;
    case MatchOutcome::Ambiguous:
      out.status = Status::ManualReview;
      out.review = ReviewItem{numbered('R', reviews_.size() + 1),
                              cmd.kind,
                              cmd.plate,
                              cmd.confidence,
                              cmd.ts,
                              out.match.candidates,
                              ReviewStatus::Pending,
                              std::nullopt,
                              std::nullopt,
                              std::nullopt};
      return out;
  }
  return out;
}

void ParkCore::commit(const Command& cmd, const Outcome& out) {
  if (!out.ok() || out.replayed) return;

  if (out.registration) {
    const RegistrationRecord& r = *out.registration;
    registry_.emplace(r.plate, r);
    wallets_.try_emplace(r.user_id, WalletAccount{r.user_id, {}});
  }
  if (out.session) {
    const ParkingSession& s = *out.session;
    sessions_[s.session_id] = s;
    if (s.state == SessionState::Active)
      active_by_plate_[s.plate] = s.session_id;
    else
      active_by_plate_.erase(s.plate);
    last_ts_[s.plate] = s.exit_ts.value_or(s.entry_ts);
  }
  if (out.transaction) {
    const std::string& owner = out.transaction->kind == TransactionKind::Topup ? cmd.user_id : out.trip->user_id;
    wallets_.at(owner).transactions.push_back(*out.transaction);
    next_txn_ = out.transaction->seq + 1;
  }
  if (out.trip) trips_.push_back(*out.trip);
  if (out.notification) {
    notifications_.push_back(*out.notification);
    next_note_ = out.notification->seq + 1;
  }
  if (out.review) reviews_[out.review->review_id] = *out.review;
  if (!cmd.idempotency_key.empty()) idempotency_.emplace(cmd.idempotency_key, out);
}

std::optional<RegistrationRecord> ParkCore::registration(const std::string& plate) const {
  const auto it = registry_.find(plate);
  if (it == registry_.end()) return std::nullopt;
  return it->second;
}

std::vector<RegistrationRecord> ParkCore::registrations() const {
  std::vector<RegistrationRecord> out;
  out.reserve(registry_.size());
  for (const auto& [plate, r] : registry_) out.push_back(r);
  return out;
}

std::vector<ParkingSession> ParkCore::sessions(std::optional<SessionState> state) const {
  std::vector<ParkingSession> out;
  for (const auto& [id, s] : sessions_)
    if (!state || s.state == *state) out.push_back(s);
  return out;
}

std::optional<ParkingSession> ParkCore::active_session(const std::string& plate) const {
  const auto it = active_by_plate_.find(plate);
  if (it == active_by_plate_.end()) return std::nullopt;
  return sessions_.at(it->second);
}

const WalletAccount* ParkCore::wallet(const std::string& user_id) const {
  const auto it = wallets_.find(user_id);
  return it == wallets_.end() ? nullptr : &it->second;
}

std::vector<TripRecord> ParkCore::trips(const std::string& user_id) const {
  std::vector<TripRecord> out;
  for (const TripRecord& t : trips_)
    if (t.user_id == user_id) out.push_back(t);
  std::stable_sort(out.begin(), out.end(), [](const TripRecord& a, const TripRecord& b) {
    if (a.exit_ts != b.exit_ts) return a.exit_ts > b.exit_ts;
    return a.session_id > b.session_id;
  });
  return out;
}

std::vector<Notification> ParkCore::notifications(const std::string& user_id, std::int64_t since) const {
  std::vector<Notification> out;
  for (const Notification& n : notifications_)
    if (n.user_id == user_id && n.seq > since) out.push_back(n);
  return out;
}

std::vector<ReviewItem> ParkCore::reviews(std::optional<ReviewStatus> status) const {
  std::vector<ReviewItem> out;
  for (const auto& [id, r] : reviews_)
    if (!status || r.status == *status) out.push_back(r);
  return out;
}

}  // namespace plategate::park

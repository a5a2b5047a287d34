#include "plategate/gateway/wire.hpp"

#include <stdexcept>

namespace plategate::park {

namespace {
template <class T>
nlohmann::json or_null(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}
}  // namespace

void to_json(nlohmann::json& j, const RateSchedule& s) {
  j = {{"grace_min", s.grace_min},
       {"base_min", s.base_min},
       {"base_price", s.base_price},
       {"block_min", s.block_min},
       {"block_price", s.block_price}};
}

void to_json(nlohmann::json& j, const RegistrationRecord& r) {
  j = {{"plate", r.plate}, {"user_id", r.user_id}, {"phone", r.phone}, {"created_at", r.created_at}};
}

void to_json(nlohmann::json& j, const ParkingSession& s) {
  j = {{"session_id", s.session_id}, {"plate", s.plate},           {"user_id", s.user_id},
       {"entry_ts", s.entry_ts},     {"exit_ts", or_null(s.exit_ts)}, {"state", to_string(s.state)}};
}

void to_json(nlohmann::json& j, const Transaction& t) {
  j = {{"seq", t.seq}, {"kind", to_string(t.kind)}, {"amount", t.amount}, {"ts", t.ts}};
  j["ref"] = t.ref.empty() ? nlohmann::json(nullptr) : nlohmann::json(t.ref);
}

void to_json(nlohmann::json& j, const WalletAccount& w) {
  j = {{"user_id", w.user_id}, {"balance", w.balance()}, {"delinquent", w.delinquent()},
       {"transactions", w.transactions}};
}

void to_json(nlohmann::json& j, const TripRecord& t) {
  j = {{"session_id", t.session_id}, {"plate", t.plate},     {"user_id", t.user_id},
       {"entry_ts", t.entry_ts},     {"exit_ts", t.exit_ts}, {"duration_min", t.duration_min},
       {"fee", t.fee}};
}

void to_json(nlohmann::json& j, const Notification& n) {
  j = {{"seq", n.seq},
       {"user_id", n.user_id},
       {"kind", to_string(n.kind)},
       {"phone", n.phone},
       {"session_id", n.session_id},
       {"plate", n.plate},
       {"entry_ts", n.entry_ts},
       {"exit_ts", or_null(n.exit_ts)},
       {"duration_min", or_null(n.duration_min)},
       {"fee", or_null(n.fee)},
       {"created_at", n.created_at}};
}

void to_json(nlohmann::json& j, const ReviewItem& r) {
  j = {{"review_id", r.review_id},
       {"type", to_string(r.event)},
       {"reading", r.reading},
       {"confidence", r.confidence},
       {"ts", r.ts},
       {"candidates", r.candidates},
       {"status", to_string(r.status)},
       {"resolved_plate", or_null(r.resolved_plate)},
       {"session_id", or_null(r.session_id)},
       {"resolved_at", or_null(r.resolved_at)}};
}

void to_json(nlohmann::json& j, const MatchResult& m) {
  j = {{"outcome", to_string(m.outcome)}, {"cost", m.cost()}};
}

}  // namespace plategate::park

namespace plategate::gateway {

using park::Command;
using park::CommandKind;
using park::Outcome;
using park::Status;

Reply error_reply(int status, const std::string& code, const std::string& detail) {
  Reply r{status, {{"error", code}}};
  if (!detail.empty()) r.body["detail"] = detail;
  return r;
}

int http_status(Status s) noexcept {
  switch (s) {
    case Status::Opened:
    case Status::Closed:
    case Status::Approved:
    case Status::Rejected: return 200;
    case Status::Registered:
    case Status::ToppedUp: return 201;
    case Status::ManualReview: return 202;
    case Status::InvalidPlate:
    case Status::InvalidUserId:
    case Status::InvalidPhone:
    case Status::NonPositiveAmount:
    case Status::NotACandidate: return 400;
    case Status::UnregisteredPlate:
    case Status::UnknownUser:
    case Status::UnknownReview: return 404;
    case Status::DuplicateEntry:
    case Status::ExitWithoutEntry:
    case Status::OutOfOrder:
    case Status::DuplicatePlate:
    case Status::ReviewResolved: return 409;
  }
  return 500;
}

namespace {

nlohmann::json session_body(const Outcome& out) {
  const park::ParkingSession& s = *out.session;
  nlohmann::json j = {{"session_id", s.session_id},
                      {"state", to_string(s.state)},
                      {"plate", s.plate},
                      {"user_id", s.user_id},
                      {"entry_ts", s.entry_ts},
                      {"match", out.match}};
  if (out.trip) {
    j["exit_ts"] = out.trip->exit_ts;
    j["duration_min"] = out.trip->duration_min;
    j["fee"] = out.trip->fee;
    j["transaction"] = out.transaction ? nlohmann::json(*out.transaction) : nlohmann::json(nullptr);
  }
  return j;
}

}  // namespace

Reply render(const Outcome& out) {
  const int code = http_status(out.status);
  if (!out.ok()) return error_reply(code, to_string(out.status));
  switch (out.status) {
    case Status::Opened:
    case Status::Closed: return {code, session_body(out)};
    case Status::ManualReview:
      return {code,
              {{"status", "manual_review"},
               {"review_id", out.review->review_id},
               {"candidates", out.review->candidates}}};
    case Status::Registered: return {code, *out.registration};
    case Status::ToppedUp: return {code, *out.transaction};
    case Status::Approved: {
      nlohmann::json j = session_body(out);
      j["review"] = *out.review;
      return {code, j};
    }
    case Status::Rejected: return {code, {{"review", *out.review}}};
    default: break;
  }
  return error_reply(500, "internal");
}

EventRecord to_event(const Command& cmd) {
  EventRecord r;
  r.ts = cmd.ts;
  r.kind = to_string(cmd.kind);
  r.idempotency_key = cmd.idempotency_key;
  switch (cmd.kind) {
    case CommandKind::Entry:
    case CommandKind::Exit: r.payload = {{"plate", cmd.plate}, {"confidence", cmd.confidence}}; break;
    case CommandKind::Registration:
      r.payload = {{"plate", cmd.plate}, {"user_id", cmd.user_id}, {"phone", cmd.phone}};
      break;
    case CommandKind::Topup: r.payload = {{"user_id", cmd.user_id}, {"amount", cmd.amount}}; break;
    case CommandKind::Review:
      r.payload = {{"review_id", cmd.review_id},
                   {"action", cmd.action == park::ReviewAction::Approve ? "approve" : "reject"},
                   {"plate", cmd.plate}};
      break;
  }
  return r;
}

Command from_event(const EventRecord& r) {
  const nlohmann::json& p = r.payload;
  try {
    Command c;
    c.ts = r.ts;
    c.idempotency_key = r.idempotency_key;
    if (r.kind == "entry" || r.kind == "exit") {
      c.kind = r.kind == "entry" ? CommandKind::Entry : CommandKind::Exit;
      c.plate = p.at("plate").get<std::string>();
      c.confidence = p.at("confidence").get<double>();
    } else if (r.kind == "registration") {
      c.kind = CommandKind::Registration;
      c.plate = p.at("plate").get<std::string>();
      c.user_id = p.at("user_id").get<std::string>();
      c.phone = p.at("phone").get<std::string>();
    } else if (r.kind == "topup") {
      c.kind = CommandKind::Topup;
      c.user_id = p.at("user_id").get<std::string>();
      c.amount = p.at("amount").get<park::Money>();
    } else if (r.kind == "review") {
      c.kind = CommandKind::Review;
      c.review_id = p.at("review_id").get<std::string>();
      const std::string action = p.at("action").get<std::string>();
      if (action != "approve" && action != "reject") throw std::invalid_argument("unknown review action " + action);
      c.action = action == "approve" ? park::ReviewAction::Approve : park::ReviewAction::Reject;
      c.plate = p.at("plate").get<std::string>();
    } else {
      throw std::invalid_argument("unknown event kind '" + r.kind + "'");
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad payload: ") + e.what());
  }
}

}  // namespace plategate::gateway

#include "plategate/gateway/service.hpp"

#include <chrono>
#include <charconv>
#include <mutex>

namespace plategate::gateway {

using nlohmann::json;
using park::Command;
using park::CommandKind;

namespace {

constexpr std::size_t kMaxAlerts = 1000;
constexpr const char* kScheduleKind = "schedule";

// Thrown inside handlers, turned into a 400 reply.
struct BadRequest {
  std::string detail;
};

json parse_body(const std::string& body, bool allow_empty = false) {
  if (allow_empty && body.find_first_not_of(" \t\r\n") == std::string::npos) return json::object();
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) throw BadRequest{"body is not valid JSON"};
  if (!j.is_object()) throw BadRequest{"body must be a JSON object"};
  return j;
}

std::string need_string(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw BadRequest{std::string("'") + key + "' must be a string"};
  return j[key].get<std::string>();
}

std::int64_t need_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw BadRequest{std::string("'") + key + "' must be an integer"};
  return j[key].get<std::int64_t>();
}

std::int64_t int_or(const json& j, const char* key, std::int64_t fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  return need_int(j, key);
}

std::string key_of(const json& j) {
  if (!j.contains("idempotency_key") || j["idempotency_key"].is_null()) return {};
  return need_string(j, "idempotency_key");
}

std::optional<std::int64_t> parse_cursor(const std::optional<std::string>& text) {
  if (!text) return 0;
  std::int64_t v = 0;
  const char* end = text->data() + text->size();
  const auto [ptr, ec] = std::from_chars(text->data(), end, v);
  if (ec != std::errc() || ptr != end || v < 0) return std::nullopt;
  return v;
}

template <class Fn>
Reply guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const BadRequest& e) {
    return error_reply(400, "malformed_body", e.detail);
  }
}

}  // namespace

park::Timestamp system_clock_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

park::ParkCore replay(const std::vector<EventRecord>& records) {
  park::ParkCore core;
  std::int64_t prev = 0;
  for (const EventRecord& r : records) {
    if (r.kind == kScheduleKind) {
      try {
        core.set_schedule(schedule_from_json(r.payload));
      } catch (const ConfigError& e) {
        throw CorruptLog(prev, "seq " + std::to_string(r.seq) + ": " + e.what());
      }
      prev = r.seq;
      continue;
    }
    Command cmd;
    try {
      cmd = from_event(r);
    } catch (const std::invalid_argument& e) {
      throw CorruptLog(prev, "seq " + std::to_string(r.seq) + ": " + e.what());
    }
    const park::Outcome out = core.plan(cmd);
    if (!out.ok() || out.replayed)
      throw CorruptLog(prev, "seq " + std::to_string(r.seq) + " no longer applies (" + to_string(out.status) + ")");
    core.commit(cmd, out);
    prev = r.seq;
  }
  return core;
}

Gateway::Gateway(GatewayConfig cfg, Clock clock) : cfg_(std::move(cfg)), clock_(std::move(clock)) {
  log_ = std::make_unique<EventLog>(cfg_.log_path(), cfg_.fsync);
  core_ = replay(log_->recovered());
  // A changed schedule is itself logged, so replay charges every past exit
  // at the rates it was charged at.
  if (core_.schedule() != cfg_.schedule) {
    log_->append({0, clock_(), kScheduleKind, schedule_to_json(cfg_.schedule), ""});
    core_.set_schedule(cfg_.schedule);
  }
}

Reply Gateway::submit(const Command& cmd) {
  std::unique_lock lock(mu_);
  const park::Outcome out = core_.plan(cmd);
  if (out.ok() && !out.replayed) {
    // Durable before visible: a failed append leaves state untouched.
    log_->append(to_event(cmd));
    core_.commit(cmd, out);
  } else if ((out.status == park::Status::UnregisteredPlate || out.status == park::Status::InvalidPlate) &&
             (cmd.kind == CommandKind::Entry || cmd.kind == CommandKind::Exit)) {
    alerts_.push_back(Alert{next_alert_++, cmd.ts, to_string(out.status), to_string(cmd.kind), cmd.plate});
    if (alerts_.size() > kMaxAlerts) alerts_.pop_front();
  }
  return render(out);
}

Reply Gateway::post_event(const std::string& body) {
  return guarded([&] {
    const json j = parse_body(body);
    const std::string type = need_string(j, "type");
    if (type != "entry" && type != "exit") throw BadRequest{"'type' must be \"entry\" or \"exit\""};
    double confidence = 1.0;
    if (j.contains("confidence") && !j["confidence"].is_null()) {
      if (!j["confidence"].is_number()) throw BadRequest{"'confidence' must be a number"};
      confidence = j["confidence"].get<double>();
      if (!(confidence >= 0.0 && confidence <= 1.0)) throw BadRequest{"'confidence' must lie in [0, 1]"};
    }
    const std::string plate = need_string(j, "plate");
    const std::int64_t ts = need_int(j, "ts");
    const std::string key = key_of(j);
    return submit(type == "entry" ? Command::entry(plate, ts, key, confidence)
                                  : Command::exit(plate, ts, key, confidence));
  });
}

Reply Gateway::post_registration(const std::string& body) {
  return guarded([&] {
    const json j = parse_body(body);
    return submit(Command::registration(need_string(j, "plate"), need_string(j, "user_id"),
                                        need_string(j, "phone"), int_or(j, "ts", clock_())));
  });
}

Reply Gateway::post_topup(const std::string& user_id, const std::string& body) {
  return guarded([&] {
    const json j = parse_body(body);
    return submit(Command::topup(user_id, need_int(j, "amount"), int_or(j, "ts", clock_()), key_of(j)));
  });
}

Reply Gateway::post_review(const std::string& review_id, const std::string& action, const std::string& body) {
  return guarded([&] {
    const json j = parse_body(body, true);
    const std::int64_t ts = int_or(j, "ts", clock_());
    if (action == "approve") return submit(Command::approve(review_id, need_string(j, "plate"), ts));
    if (action == "reject") return submit(Command::reject(review_id, ts));
    return error_reply(404, "not_found");
  });
}

Reply Gateway::get_sessions(const std::optional<std::string>& state) const {
  std::optional<park::SessionState> filter;
  if (state) {
    if (*state == "active")
      filter = park::SessionState::Active;
    else if (*state == "closed")
      filter = park::SessionState::Closed;
    else
      return error_reply(400, "malformed_query", "state must be active or closed");
  }
  std::shared_lock lock(mu_);
  return {200, {{"sessions", core_.sessions(filter)}}};
}

Reply Gateway::get_wallet(const std::string& user_id) const {
  std::shared_lock lock(mu_);
  const park::WalletAccount* w = core_.wallet(user_id);
  if (!w) return error_reply(404, "unknown_user");
  return {200, *w};
}

Reply Gateway::get_trips(const std::string& user_id) const {
  std::shared_lock lock(mu_);
  if (!core_.has_user(user_id)) return error_reply(404, "unknown_user");
  return {200, {{"user_id", user_id}, {"trips", core_.trips(user_id)}}};
}

Reply Gateway::get_notifications(const std::string& user_id, const std::optional<std::string>& since) const {
  const auto cursor = parse_cursor(since);
  if (!cursor) return error_reply(400, "malformed_query", "since must be a non-negative integer");
  std::shared_lock lock(mu_);
  if (!core_.has_user(user_id)) return error_reply(404, "unknown_user");
  const auto notes = core_.notifications(user_id, *cursor);
  const std::int64_t next = notes.empty() ? *cursor : notes.back().seq;
  return {200, {{"user_id", user_id}, {"notifications", notes}, {"next_since", next}}};
}

Reply Gateway::get_reviews(const std::optional<std::string>& status) const {
  std::optional<park::ReviewStatus> filter;
  if (status) {
    if (*status == "pending")
      filter = park::ReviewStatus::Pending;
    else if (*status == "approved")
      filter = park::ReviewStatus::Approved;
    else if (*status == "rejected")
      filter = park::ReviewStatus::Rejected;
    else
      return error_reply(400, "malformed_query", "status must be pending, approved or rejected");
  }
  std::shared_lock lock(mu_);
  return {200, {{"reviews", core_.reviews(filter)}}};
}

Reply Gateway::get_alerts(const std::optional<std::string>& since) const {
  const auto cursor = parse_cursor(since);
  if (!cursor) return error_reply(400, "malformed_query", "since must be a non-negative integer");
  std::shared_lock lock(mu_);
  json list = json::array();
  for (const Alert& a : alerts_)
    if (a.seq > *cursor)
      list.push_back({{"seq", a.seq}, {"ts", a.ts}, {"error", a.code}, {"type", a.type}, {"reading", a.reading}});
  return {200, {{"alerts", list}}};
}

Reply Gateway::get_schedule() const { return {200, cfg_.schedule}; }

Reply Gateway::health() const {
  std::shared_lock lock(mu_);
  return {200,
          {{"status", "ok"},
           {"last_seq", log_->last_seq()},
           {"registrations", core_.registrations().size()},
           {"active_sessions", core_.active_count()}}};
}

park::ParkCore Gateway::state() const {
  std::shared_lock lock(mu_);
  return core_;
}

std::int64_t Gateway::last_seq() const {
  std::shared_lock lock(mu_);
  return log_->last_seq();
}

}  // namespace plategate::gateway

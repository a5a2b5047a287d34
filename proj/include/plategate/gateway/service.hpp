#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>

#include "plategate/gateway/config.hpp"
#include "plategate/gateway/event_log.hpp"
#include "plategate/gateway/wire.hpp"
#include "plategate/park/core.hpp"

namespace plategate::gateway {

/// Operator-visible record of a camera event that kept the gate closed.
/// Held in memory only: refused requests never reach the event log.
struct Alert {
  std::int64_t seq = 0;
  park::Timestamp ts = 0;
  std::string code;  ///< unregistered_plate | invalid_plate
  std::string type;  ///< entry | exit
  std::string reading;
};

using Clock = std::function<park::Timestamp()>;
park::Timestamp system_clock_seconds();

/// The API independent of transport. Every mutation runs plan, durable
/// append, commit under one exclusive lock; reads share the lock.
class Gateway {
 public:
  /// Replays the event log in cfg.data_dir. Throws CorruptLog when a record
  /// is torn, malformed or no longer applies, and LogIoError on I/O failure.
  explicit Gateway(GatewayConfig cfg, Clock clock = system_clock_seconds);

  Reply post_event(const std::string& body);
  Reply post_registration(const std::string& body);
  Reply post_topup(const std::string& user_id, const std::string& body);
  Reply post_review(const std::string& review_id, const std::string& action, const std::string& body);

  Reply get_sessions(const std::optional<std::string>& state) const;
  Reply get_wallet(const std::string& user_id) const;
  Reply get_trips(const std::string& user_id) const;
  Reply get_notifications(const std::string& user_id, const std::optional<std::string>& since) const;
  Reply get_reviews(const std::optional<std::string>& status) const;
  Reply get_alerts(const std::optional<std::string>& since) const;
  Reply get_schedule() const;
  Reply health() const;

  /// Applies a command exactly as the HTTP handlers do.
  Reply submit(const park::Command& cmd);

  park::ParkCore state() const;
  std::int64_t last_seq() const;
  const GatewayConfig& config() const noexcept { return cfg_; }

 private:
  GatewayConfig cfg_;
  Clock clock_;
  mutable std::shared_mutex mu_;
  park::ParkCore core_;
  std::unique_ptr<EventLog> log_;
  std::deque<Alert> alerts_;
  std::int64_t next_alert_ = 1;
};

/// Replays records into a fresh core. Throws CorruptLog naming the last
/// record that applied cleanly.
park::ParkCore replay(const std::vector<EventRecord>& records);

}  // namespace plategate::gateway

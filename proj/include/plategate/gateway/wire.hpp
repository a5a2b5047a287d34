#pragma once

#include <nlohmann/json.hpp>

#include "plategate/gateway/event_log.hpp"
#include "plategate/park/core.hpp"

// JSON shapes shared by the HTTP API, the event log and the simulator.
// Field names are snake_case and documented in docs/wire.md.

namespace plategate::park {

void to_json(nlohmann::json& j, const RateSchedule& s);
void to_json(nlohmann::json& j, const RegistrationRecord& r);
void to_json(nlohmann::json& j, const ParkingSession& s);
void to_json(nlohmann::json& j, const Transaction& t);
void to_json(nlohmann::json& j, const WalletAccount& w);
void to_json(nlohmann::json& j, const TripRecord& t);
void to_json(nlohmann::json& j, const Notification& n);
void to_json(nlohmann::json& j, const ReviewItem& r);
void to_json(nlohmann::json& j, const MatchResult& m);

}  // namespace plategate::park

namespace plategate::gateway {

struct Reply {
  int status = 200;
  nlohmann::json body;
  bool operator==(const Reply&) const = default;
};

Reply error_reply(int status, const std::string& code, const std::string& detail = {});

int http_status(park::Status s) noexcept;

/// Response for a planned command. Depends only on the outcome, so an
/// idempotent re-delivery renders byte-identical JSON.
Reply render(const park::Outcome& out);

EventRecord to_event(const park::Command& cmd);
/// Throws std::invalid_argument when the record does not describe a command.
park::Command from_event(const EventRecord& r);

}  // namespace plategate::gateway

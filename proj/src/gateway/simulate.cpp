#include "plategate/gateway/simulate.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>

#include <httplib.h>

#include "plategate/synth/corpus.hpp"
#include "plategate/synth/rng.hpp"

namespace plategate::gateway {

using nlohmann::json;

Scenario scenario_from_json(const json& j) {
  try {
    Scenario s;
    for (const json& v : j.at("vehicles"))
      s.vehicles.push_back({v.at("plate").get<std::string>(), v.at("user_id").get<std::string>(),
                            v.at("phone").get<std::string>()});
    if (j.contains("topups"))
      for (const json& t : j["topups"]) s.topups.push_back({t.at("user_id").get<std::string>(), t.at("amount")});
    for (const json& e : j.at("events")) {
      Scenario::Event ev;
      ev.type = e.at("type").get<std::string>();
      if (ev.type != "entry" && ev.type != "exit") throw ScenarioError("event type must be entry or exit");
      ev.plate = e.at("plate").get<std::string>();
      ev.ts = e.at("ts").get<park::Timestamp>();
      ev.idempotency_key = e.value("idempotency_key", std::string{});
      ev.confidence = e.value("confidence", 1.0);
      s.events.push_back(std::move(ev));
    }
    if (j.contains("expect")) {
      s.expect_trips = j["expect"].value("trips", -1L);
      s.expect_notifications = j["expect"].value("notifications", -1L);
    }
    return s;
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("malformed scenario: ") + e.what());
  }
}

json scenario_to_json(const Scenario& s) {
  json j = {{"vehicles", json::array()}, {"topups", json::array()}, {"events", json::array()}};
  for (const auto& v : s.vehicles) j["vehicles"].push_back({{"plate", v.plate}, {"user_id", v.user_id}, {"phone", v.phone}});
  for (const auto& t : s.topups) j["topups"].push_back({{"user_id", t.user_id}, {"amount", t.amount}});
  for (const auto& e : s.events)
    j["events"].push_back({{"type", e.type},
                           {"plate", e.plate},
                           {"ts", e.ts},
                           {"idempotency_key", e.idempotency_key},
                           {"confidence", e.confidence}});
  json expect = json::object();
  if (s.expect_trips >= 0) expect["trips"] = s.expect_trips;
  if (s.expect_notifications >= 0) expect["notifications"] = s.expect_notifications;
  if (!expect.empty()) j["expect"] = expect;
  return j;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot read scenario " + path.string());
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ScenarioError("scenario " + path.string() + " is not valid JSON");
  return scenario_from_json(j);
}

Scenario make_fleet_scenario(std::size_t vehicles, std::uint64_t seed, const park::RateSchedule& schedule,
                             park::Timestamp start_ts) {
  schedule.validate();
  synth::Rng rng(seed);
  Scenario s;
  std::set<std::string> plates;
  for (std::size_t i = 0; i < vehicles; ++i) {
    std::string plate;
    do plate = synth::random_plate_text(rng);
    while (!plates.insert(plate).second);
    char user[32], phone[32];
    std::snprintf(user, sizeof user, "u%04zu", i + 1);
    std::snprintf(phone, sizeof phone, "+1555%07zu", i + 1);
    s.vehicles.push_back({plate, user, phone});
    s.topups.push_back({user, 10'000});

    const auto minutes_in = [&](std::int64_t lo, std::int64_t hi) {
      return lo + static_cast<std::int64_t>(rng.uniform01() * static_cast<double>(hi - lo + 1));
    };
    std::int64_t minutes = 0;
    switch (i % 4) {
      case 0: minutes = minutes_in(0, schedule.grace_min); break;
      case 1: minutes = minutes_in(schedule.grace_min + 1, schedule.base_min); break;
      case 2: minutes = minutes_in(schedule.base_min + 1, schedule.base_min + 2 * schedule.block_min); break;
      default: minutes = minutes_in(schedule.base_min + 2 * schedule.block_min + 1, 24 * 60); break;
    }
    // Shave up to 59 s so the stay still rounds up to `minutes`.
    const std::int64_t seconds = minutes == 0 ? 0 : minutes * 60 - rng.uniform_int(0, 59);
    const park::Timestamp entry = start_ts + static_cast<park::Timestamp>(i) * 37 + rng.uniform_int(0, 30);
    s.events.push_back({"entry", plate, entry, "in-" + plate, 1.0});
    s.events.push_back({"exit", plate, entry + seconds, "out-" + plate, 1.0});
  }
  std::stable_sort(s.events.begin(), s.events.end(),
                   [](const Scenario::Event& a, const Scenario::Event& b) { return a.ts < b.ts; });
  s.expect_trips = static_cast<long>(vehicles);
  s.expect_notifications = static_cast<long>(2 * vehicles);
  return s;
}

json SimulationReport::to_json() const {
  json trip_list = json::array();
  for (const TripCheck& t : trips)
    trip_list.push_back({{"user_id", t.user_id},
                         {"session_id", t.session_id},
                         {"plate", t.plate},
                         {"duration_min", t.duration_min},
                         {"fee", t.fee},
                         {"expected_fee", t.expected_fee}});
  return {{"ok", ok()},
          {"requests", requests},
          {"rejected", rejected},
          {"errors", errors},
          {"trip_count", trips.size()},
          {"notification_count", notifications},
          {"fee_mismatches", fee_mismatches},
          {"expectations_met", expectations_met},
          {"trips", trip_list}};
}

SimulationReport run_scenario(const Scenario& s, const std::string& base_url) {
  httplib::Client client(base_url);
  client.set_connection_timeout(5);
  client.set_read_timeout(30);
  SimulationReport report;

  const auto call = [&](const char* method, const std::string& path, const json* body) -> std::optional<json> {
    ++report.requests;
    httplib::Result res = body ? client.Post(path, body->dump(), "application/json") : client.Get(path);
    if (!res) {
      report.errors.push_back(std::string(method) + " " + path + ": " + httplib::to_string(res.error()));
      return std::nullopt;
    }
    if (res->status < 200 || res->status >= 300) {
      ++report.rejected;
      report.errors.push_back(std::string(method) + " " + path + " -> " + std::to_string(res->status) + " " +
                              res->body);
      return std::nullopt;
    }
    json j = json::parse(res->body, nullptr, false);
    if (j.is_discarded()) {
      report.errors.push_back(std::string(method) + " " + path + ": response is not JSON");
      return std::nullopt;
    }
    return j;
  };

  const auto sched_json = call("GET", "/v1/schedule", nullptr);
  if (!sched_json) return report;
  park::RateSchedule schedule;
  schedule.grace_min = sched_json->at("grace_min");
  schedule.base_min = sched_json->at("base_min");
  schedule.base_price = sched_json->at("base_price");
  schedule.block_min = sched_json->at("block_min");
  schedule.block_price = sched_json->at("block_price");

  for (const auto& v : s.vehicles) {
    const json body = {{"plate", v.plate}, {"user_id", v.user_id}, {"phone", v.phone}};
    call("POST", "/v1/registrations", &body);
  }
  for (const auto& t : s.topups) {
    const json body = {{"amount", t.amount}};
    call("POST", "/v1/users/" + t.user_id + "/wallet/topup", &body);
  }
  for (const auto& e : s.events) {
    json body = {{"type", e.type}, {"plate", e.plate}, {"ts", e.ts}, {"confidence", e.confidence}};
    if (!e.idempotency_key.empty()) body["idempotency_key"] = e.idempotency_key;
    call("POST", "/v1/events", &body);
  }

  // Stays the script implies, keyed by plate.
  std::map<std::string, std::vector<std::pair<park::Timestamp, park::Timestamp>>> stays;
  std::map<std::string, park::Timestamp> open;
  for (const auto& e : s.events) {
    if (e.type == "entry") {
      open.try_emplace(e.plate, e.ts);
    } else if (const auto it = open.find(e.plate); it != open.end()) {
      stays[e.plate].emplace_back(it->second, e.ts);
      open.erase(it);
    }
  }

  std::set<std::string> users;
  for (const auto& v : s.vehicles) users.insert(v.user_id);
  for (const std::string& user : users) {
    if (const auto trips = call("GET", "/v1/users/" + user + "/trips", nullptr)) {
      for (const json& t : trips->at("trips")) {
        TripCheck c{user,
                    t.at("session_id"),
                    t.at("plate"),
                    t.at("duration_min"),
                    t.at("fee"),
                    0};
        const std::pair<park::Timestamp, park::Timestamp> stay{t.at("entry_ts"), t.at("exit_ts")};
        const auto& scripted = stays[c.plate];
        const bool known = std::find(scripted.begin(), scripted.end(), stay) != scripted.end();
        const std::int64_t expect_min = park::duration_minutes(stay.first, stay.second);
        c.expected_fee = park::compute_fee(expect_min, schedule);
        if (!known || c.fee != c.expected_fee || c.duration_min != expect_min) ++report.fee_mismatches;
        report.trips.push_back(std::move(c));
      }
    }
    if (const auto notes = call("GET", "/v1/users/" + user + "/notifications?since=0", nullptr))
      report.notifications += notes->at("notifications").size();
  }

  if (s.expect_trips >= 0 && static_cast<long>(report.trips.size()) != s.expect_trips) report.expectations_met = false;
  if (s.expect_notifications >= 0 && static_cast<long>(report.notifications) != s.expect_notifications)
    report.expectations_met = false;
  return report;
}

}  // namespace plategate::gateway

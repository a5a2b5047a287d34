#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plategate/park/fee.hpp"

namespace plategate::gateway {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scripted fleet: registrations, optional top-ups, then camera events in
/// order. `expect_*` are checked when non-negative.
struct Scenario {
  struct Vehicle {
    std::string plate, user_id, phone;
  };
  struct Topup {
    std::string user_id;
    park::Money amount = 0;
  };
  struct Event {
    std::string type;  ///< entry | exit
    std::string plate;
    park::Timestamp ts = 0;
    std::string idempotency_key;
    double confidence = 1.0;
  };
  std::vector<Vehicle> vehicles;
  std::vector<Topup> topups;
  std::vector<Event> events;
  long expect_trips = -1;
  long expect_notifications = -1;
};

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);
Scenario load_scenario(const std::filesystem::path& path);

/// `vehicles` cars, each entering and leaving once. Stays cycle through the
/// grace, base, short-block and long-block tiers of `schedule`, with seconds
/// jitter so minute rounding is exercised.
Scenario make_fleet_scenario(std::size_t vehicles, std::uint64_t seed, const park::RateSchedule& schedule,
                             park::Timestamp start_ts = 1'760'000'000);

struct TripCheck {
  std::string user_id, session_id, plate;
  std::int64_t duration_min = 0;
  park::Money fee = 0;
  park::Money expected_fee = 0;
};

struct SimulationReport {
  std::size_t requests = 0;
  std::size_t rejected = 0;  ///< responses outside 2xx
  std::vector<std::string> errors;
  std::vector<TripCheck> trips;
  std::size_t notifications = 0;
  std::size_t fee_mismatches = 0;
  bool expectations_met = true;

  bool ok() const noexcept { return rejected == 0 && fee_mismatches == 0 && expectations_met && errors.empty(); }
  nlohmann::json to_json() const;
};

/// Drives a running gateway at base_url (e.g. "http://127.0.0.1:8080") and
/// reconciles its trips and notifications against the script. Fees are
/// checked against the schedule the server publishes.
SimulationReport run_scenario(const Scenario& s, const std::string& base_url);

}  // namespace plategate::gateway

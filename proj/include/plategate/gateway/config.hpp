#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "plategate/park/fee.hpp"

namespace plategate::gateway {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GatewayConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  ///< 0 picks a free port
  std::filesystem::path data_dir = "data";
  bool fsync = true;
  int threads = 8;
  park::RateSchedule schedule;

  std::filesystem::path log_path() const { return data_dir / "events.jsonl"; }
};

/// Keys absent from `j` keep their defaults; unknown keys are rejected.
GatewayConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const GatewayConfig& c);
/// The `schedule` object alone; missing keys take defaults. Throws ConfigError.
park::RateSchedule schedule_from_json(const nlohmann::json& j);
nlohmann::json schedule_to_json(const park::RateSchedule& s);
GatewayConfig load_config(const std::filesystem::path& path);

}  // namespace plategate::gateway

#include "plategate/gateway/config.hpp"

#include <fstream>

namespace plategate::gateway {

namespace {

template <class T>
void read_field(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> known, const char* where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(std::string("unknown ") + where + " key '" + key + "'");
  }
}

}  // namespace

park::RateSchedule schedule_from_json(const nlohmann::json& s) {
  if (!s.is_object()) throw ConfigError("'schedule' must be an object");
  reject_unknown(s, {"grace_min", "base_min", "base_price", "block_min", "block_price"}, "schedule");
  park::RateSchedule r;
  read_field(s, "grace_min", r.grace_min);
  read_field(s, "base_min", r.base_min);
  read_field(s, "base_price", r.base_price);
  read_field(s, "block_min", r.block_min);
  read_field(s, "block_price", r.block_price);
  if (!r.valid()) throw ConfigError("invalid rate schedule");
  return r;
}

GatewayConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j, {"host", "port", "data_dir", "fsync", "threads", "schedule"}, "config");
  GatewayConfig c;
  read_field(j, "host", c.host);
  read_field(j, "port", c.port);
  std::string dir = c.data_dir.string();
  read_field(j, "data_dir", dir);
  c.data_dir = dir;
  read_field(j, "fsync", c.fsync);
  read_field(j, "threads", c.threads);
  if (j.contains("schedule")) c.schedule = schedule_from_json(j["schedule"]);
  if (c.port < 0 || c.port > 65535) throw ConfigError("port out of range");
  if (c.threads < 1) throw ConfigError("threads must be >= 1");
  return c;
}

nlohmann::json config_to_json(const GatewayConfig& c) {
  return {{"host", c.host},
          {"port", c.port},
          {"data_dir", c.data_dir.string()},
          {"fsync", c.fsync},
          {"threads", c.threads},
          {"schedule", schedule_to_json(c.schedule)}};
}

nlohmann::json schedule_to_json(const park::RateSchedule& s) {
  return {{"grace_min", s.grace_min},
          {"base_min", s.base_min},
          {"base_price", s.base_price},
          {"block_min", s.block_min},
          {"block_price", s.block_price}};
}

GatewayConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

}  // namespace plategate::gateway

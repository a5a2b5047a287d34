#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace plategate::gateway {

/// The log cannot be trusted past `last_valid_seq` (0 when nothing is).
class CorruptLog : public std::runtime_error {
 public:
  CorruptLog(std::int64_t last_valid_seq, const std::string& why);
  std::int64_t last_valid_seq() const noexcept { return last_valid_seq_; }

 private:
  std::int64_t last_valid_seq_;
};

class LogIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EventRecord {
  std::int64_t seq = 0;
  std::int64_t ts = 0;
  std::string kind;  ///< entry | exit | registration | topup | review
  nlohmann::json payload = nlohmann::json::object();
  std::string idempotency_key;  ///< empty when the request carried none

  bool operator==(const EventRecord&) const = default;
};

std::string to_line(const EventRecord& r);
/// Throws CorruptLog(prev_seq, ...) on a malformed line.
EventRecord parse_line(const std::string& line, std::int64_t prev_seq);

/// Append-only JSON-lines file. Each append is a single write(2) of a whole
/// line, optionally followed by fdatasync, before it returns.
class EventLog {
 public:
  /// Opens or creates the log and reads back every stored record.
  /// Throws CorruptLog on a torn or malformed line and LogIoError when the
  /// file cannot be opened.
  EventLog(const std::filesystem::path& path, bool sync = true);
  ~EventLog();
  EventLog(const EventLog&) = delete;
  EventLog& operator=(const EventLog&) = delete;

  /// Records found at open time, in order.
  const std::vector<EventRecord>& recovered() const noexcept { return recovered_; }
  std::int64_t last_seq() const noexcept { return last_seq_; }
  const std::filesystem::path& path() const noexcept { return path_; }

  /// Assigns the next seq to `r`, writes it and returns the seq.
  std::int64_t append(EventRecord r);

 private:
  std::filesystem::path path_;
  int fd_ = -1;
  bool sync_;
  std::int64_t last_seq_ = 0;
  std::vector<EventRecord> recovered_;
};

}  // namespace plategate::gateway

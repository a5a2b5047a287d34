#include "plategate/gateway/event_log.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>

namespace plategate::gateway {

CorruptLog::CorruptLog(std::int64_t last_valid_seq, const std::string& why)
    : std::runtime_error("corrupt event log after seq " + std::to_string(last_valid_seq) + ": " + why),
      last_valid_seq_(last_valid_seq) {}

std::string to_line(const EventRecord& r) {
  nlohmann::ordered_json j = {{"seq", r.seq}, {"ts", r.ts}, {"kind", r.kind}};
  j["payload"] = nlohmann::ordered_json::parse(r.payload.dump());
  j["idempotency_key"] =
      r.idempotency_key.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.idempotency_key);
  return j.dump() + '\n';
}

EventRecord parse_line(const std::string& line, std::int64_t prev_seq) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw CorruptLog(prev_seq, std::string("unparsable record: ") + e.what());
  }
  const auto field_ok = [&](const char* name, auto pred) { return j.is_object() && j.contains(name) && pred(j[name]); };
  if (!field_ok("seq", [](const auto& v) { return v.is_number_integer(); }) ||
      !field_ok("ts", [](const auto& v) { return v.is_number_integer(); }) ||
      !field_ok("kind", [](const auto& v) { return v.is_string(); }) ||
      !field_ok("payload", [](const auto& v) { return v.is_object(); }) ||
      !field_ok("idempotency_key", [](const auto& v) { return v.is_null() || v.is_string(); }))
    throw CorruptLog(prev_seq, "record is missing a field");

  EventRecord r;
  r.seq = j["seq"].get<std::int64_t>();
  r.ts = j["ts"].get<std::int64_t>();
  r.kind = j["kind"].get<std::string>();
  r.payload = j["payload"];
  if (j["idempotency_key"].is_string()) r.idempotency_key = j["idempotency_key"].get<std::string>();
  if (r.seq <= prev_seq) throw CorruptLog(prev_seq, "seq " + std::to_string(r.seq) + " does not increase");
  return r;
}

EventLog::EventLog(const std::filesystem::path& path, bool sync) : path_(path), sync_(sync) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  {
    std::ifstream in(path, std::ios::binary);
    if (in) {
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      std::size_t pos = 0;
      while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        // A record is only durable once its newline is; a torn tail is corruption.
        if (nl == std::string::npos) throw CorruptLog(last_seq_, "truncated final record");
        const std::string line = text.substr(pos, nl - pos);
        pos = nl + 1;
        if (line.empty()) throw CorruptLog(last_seq_, "blank line");
        recovered_.push_back(parse_line(line, last_seq_));
        last_seq_ = recovered_.back().seq;
      }
    }
  }
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) throw LogIoError("cannot open event log " + path.string() + ": " + std::strerror(errno));
}

EventLog::~EventLog() {
  if (fd_ >= 0) ::close(fd_);
}

std::int64_t EventLog::append(EventRecord r) {
  r.seq = last_seq_ + 1;
  const std::string line = to_line(r);
  std::size_t done = 0;
  while (done < line.size()) {
    const ssize_t n = ::write(fd_, line.data() + done, line.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw LogIoError(std::string("event log write failed: ") + std::strerror(errno));
    }
    done += static_cast<std::size_t>(n);
  }
  if (sync_ && ::fdatasync(fd_) != 0) throw LogIoError(std::string("event log sync failed: ") + std::strerror(errno));
  last_seq_ = r.seq;
  return r.seq;
}

}  // namespace plategate::gateway

#pragma once

// Random command streams for the parking property tests.

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "plategate/park/core.hpp"

namespace workload {

using plategate::park::Command;

/// Any valid schedule: grace below base, zero prices allowed.
inline plategate::park::RateSchedule random_schedule(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> grace(0, 60), extra(1, 240), block(1, 120), price(0, 5000);
  plategate::park::RateSchedule s;
  s.grace_min = grace(rng);
  s.base_min = s.grace_min + extra(rng);
  s.base_price = price(rng);
  s.block_min = block(rng);
  s.block_price = price(rng);
  return s;
}

struct Fleet {
  std::vector<std::string> plates;
  std::vector<std::string> users;
};

/// Plates built so some pairs differ by a single confusable character,
/// which makes fuzzy and ambiguous readings reachable.
inline Fleet make_fleet(std::mt19937_64& rng, int vehicles) {
  static const char* kPrefixes[] = {"OD", "QD", "KA", "TS", "MH"};
  Fleet f;
  std::set<std::string> seen;
  std::uniform_int_distribution<int> digit(0, 9), pick(0, 4);
  while (static_cast<int>(f.plates.size()) < vehicles) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%s0%dAB%d%d%d%d", kPrefixes[pick(rng)], digit(rng) % 3, digit(rng) % 2, 2,
                  digit(rng) % 3, digit(rng) % 2 ? 4 : 8);
    if (!seen.insert(buf).second) continue;
    f.plates.emplace_back(buf);
    f.users.push_back("u" + std::to_string((f.plates.size() + 1) / 2));  // two plates per user
  }
  return f;
}

/// Nudges one character to a confusable or arbitrary neighbour.
inline std::string misread(std::mt19937_64& rng, std::string plate) {
  static const std::string kSwap = "O0DQI1LB8Z2S5G6A4";
  std::uniform_int_distribution<std::size_t> pos(0, plate.size() - 1);
  const std::size_t i = pos(rng);
  std::uniform_int_distribution<std::size_t> c(0, kSwap.size() - 1);
  plate[i] = kSwap[c(rng)];
  return plate;
}

/// Registrations, then `events` entries/exits/top-ups with occasional
/// misreads, unknown plates, non-positive top-ups and small clock steps
/// backwards. Every vehicle and top-up command carries a unique key.
inline std::vector<Command> random_stream(std::mt19937_64& rng, int vehicles, int events) {
  const Fleet fleet = make_fleet(rng, vehicles);
  std::vector<Command> out;
  std::int64_t ts = 1'700'000'000;
  for (std::size_t i = 0; i < fleet.plates.size(); ++i)
    out.push_back(Command::registration(fleet.plates[i], fleet.users[i],
                                        "+1555" + std::to_string(1000000 + static_cast<int>(i)), ts));
  std::uniform_int_distribution<std::size_t> pick(0, fleet.plates.size() - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::int64_t> step(0, 5400);
  int key = 0;
  for (int e = 0; e < events; ++e) {
    ts += u(rng) < 0.05 ? -std::min<std::int64_t>(step(rng), 600) : step(rng);
    const std::string k = "k" + std::to_string(++key);
    const double r = u(rng);
    if (r < 0.15) {
      const std::int64_t amount = u(rng) < 0.1 ? 0 : 500 * (1 + static_cast<std::int64_t>(u(rng) * 20));
      out.push_back(Command::topup(fleet.users[pick(rng)], amount, ts, k));
      continue;
    }
    std::string reading = fleet.plates[pick(rng)];
    if (u(rng) < 0.15) reading = misread(rng, reading);
    if (u(rng) < 0.03) reading = "ZZ99ZZ9999";
    out.push_back(r < 0.58 ? Command::entry(reading, ts, k, 0.9) : Command::exit(reading, ts, k, 0.9));
  }
  return out;
}

/// Adds re-deliveries until they make up `dup_share` of the stream: some
/// immediate retries of any command, the rest late copies of commands that
/// were accepted the first time (as a client whose ack was lost would send).
inline std::vector<Command> with_duplicates(std::mt19937_64& rng, const std::vector<Command>& base,
                                            double dup_share) {
  plategate::park::ParkCore probe;
  std::vector<bool> accepted(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) accepted[i] = probe.execute(base[i]).ok();

  std::vector<std::size_t> keyed;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (!base[i].idempotency_key.empty()) keyed.push_back(i);
  const auto extra = static_cast<std::size_t>(dup_share / (1.0 - dup_share) * static_cast<double>(base.size()));
  if (keyed.empty()) return base;

  // Slot list: dups[i] holds copies delivered right after base[i].
  std::vector<std::vector<Command>> after(base.size());
  std::uniform_int_distribution<std::size_t> pick(0, keyed.size() - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t n = 0; n < extra; ++n) {
    const std::size_t src = keyed[pick(rng)];
    if (!accepted[src] || u(rng) < 0.3) {
      after[src].push_back(base[src]);
    } else {
      std::uniform_int_distribution<std::size_t> later(src, base.size() - 1);
      after[later(rng)].push_back(base[src]);
    }
  }
  std::vector<Command> out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    out.push_back(base[i]);
    for (auto& c : after[i]) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace workload

// Acceptance suite. One PASS/FAIL line per criterion; the exit status is
// non-zero when any criterion fails. Thresholds live in kGate below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "plategate/anpr/evaluate.hpp"
#include "plategate/gateway/server.hpp"
#include "plategate/gateway/service.hpp"
#include "plategate/gateway/simulate.hpp"
#include "plategate/imaging/ops.hpp"
#include "plategate/park/core.hpp"
#include "plategate/pipeline.hpp"
#include "plategate/plate_grammar.hpp"
#include "plategate/synth/corpus.hpp"
#include "tempdir.hpp"
#include "workload.hpp"

using namespace plategate;
using Clock = std::chrono::steady_clock;

namespace {

namespace kGate {
constexpr int kOtsuImages = 1000;
constexpr int kComponentImages = 200;
constexpr double kOracleSeconds = 5.0;

constexpr std::uint64_t kCorpusSeed = 42;
constexpr std::size_t kCorpusScenes = 200;
constexpr double kDetectClean = 0.95;
constexpr double kDetectNoisy = 0.85;
constexpr double kDetectSeconds = 60.0;

constexpr double kOcrClean = 0.98;
constexpr double kOcrNoisy = 0.90;
constexpr double kMedianPipelineMs = 250.0;

constexpr int kFeeCases = 10'000;
constexpr std::int64_t kMaxDurationMin = 10'080;

constexpr int kInterleavings = 1000;
constexpr double kDuplicateShare = 0.2;

constexpr int kRecoverySequences = 100;

constexpr std::size_t kSimVehicles = 50;
}  // namespace kGate

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Verdict otsu_oracle() {
  std::mt19937_64 rng(1);
  const auto t0 = Clock::now();
  int mismatches = 0;
  for (int i = 0; i < kGate::kOtsuImages; ++i) {
    const auto img = oracle::random_gray(rng, 16, 16);
    const auto want = oracle::otsu(img);
    if (!want || imaging::otsu_threshold(img).threshold != *want) ++mismatches;
  }
  const double s = seconds_since(t0);
  return {mismatches == 0 && s < kGate::kOracleSeconds,
          fmt("%d images, %d mismatches, %.2f s (limit %.0f s)", kGate::kOtsuImages, mismatches, s,
              kGate::kOracleSeconds)};
}

Verdict components_oracle() {
  std::mt19937_64 rng(2);
  const auto t0 = Clock::now();
  int mismatches = 0;
  for (int i = 0; i < kGate::kComponentImages; ++i) {
    const auto bin = oracle::random_binary(rng, 32, 32, 0.05 + 0.9 * (i % 19) / 18.0);
    int count = 0;
    const auto want = oracle::flood_labels(bin, &count);
    const auto got = imaging::connected_components(bin);
    if (got.component_count != count || !oracle::same_partition(got.labels, want)) ++mismatches;
  }
  const double s = seconds_since(t0);
  return {mismatches == 0 && s < kGate::kOracleSeconds,
          fmt("%d images, %d mismatches, %.2f s (limit %.0f s)", kGate::kComponentImages, mismatches, s,
              kGate::kOracleSeconds)};
}

// Both tiers of the seed-42 corpus, generated once and shared by the vision gates.
struct Corpus {
  TempDir dir{"accept-corpus"};
  std::vector<synth::CorpusManifestEntry> manifest;
  Corpus() {
    for (auto tier : {synth::NoiseTier::Clean, synth::NoiseTier::Noisy}) {
      const auto sub = dir / synth::to_string(tier);
      for (auto e : synth::generate_corpus(kGate::kCorpusSeed, kGate::kCorpusScenes, tier, sub)) {
        e.image_path = synth::to_string(tier) + "/" + e.image_path;
        manifest.push_back(std::move(e));
      }
    }
  }
};

Corpus& corpus() {
  static Corpus c;
  return c;
}

double tier_rate(const anpr::DetectorReport& r, synth::NoiseTier t) {
  for (const auto& tr : r.tiers)
    if (tr.tier == t) return tr.detection_rate;
  return 0.0;
}

Verdict detector_gate() {
  const anpr::ClassicalRecognizer rec;
  const auto t0 = Clock::now();
  const auto report = anpr::evaluate_detector(rec, corpus().manifest, corpus().dir.path(), 1);
  const double s = seconds_since(t0);
  const double clean = tier_rate(report, synth::NoiseTier::Clean), noisy = tier_rate(report, synth::NoiseTier::Noisy);
  return {clean >= kGate::kDetectClean && noisy >= kGate::kDetectNoisy && s < kGate::kDetectSeconds,
          fmt("clean %.3f (>= %.2f), noisy %.3f (>= %.2f), %.1f s single-threaded (limit %.0f s)", clean,
              kGate::kDetectClean, noisy, kGate::kDetectNoisy, s, kGate::kDetectSeconds)};
}

// OCR and latency share one pass over the corpus.
const OcrReport& ocr_report() {
  static const OcrReport r = [] {
    const anpr::ClassicalRecognizer rec;
    const auto atlas = ocr::GlyphAtlas::build();
    // One worker so the per-scene timings are not inflated by contention.
    return evaluate_ocr(corpus().manifest, corpus().dir.path(), rec, atlas, 1);
  }();
  return r;
}

const OcrTierReport* tier_of(const OcrReport& r, synth::NoiseTier t) {
  for (const auto& tr : r.tiers)
    if (tr.tier == t) return &tr;
  return nullptr;
}

Verdict ocr_gate() {
  const OcrReport& r = ocr_report();
  const auto* clean = tier_of(r, synth::NoiseTier::Clean);
  const auto* noisy = tier_of(r, synth::NoiseTier::Noisy);
  if (!clean || !noisy) return {false, "missing tier in OCR report"};

  const auto csv_path = corpus().dir / "confusion.csv";
  {
    std::ofstream out(csv_path);
    out << r.confusion.to_csv();
  }
  const bool csv_ok = std::filesystem::file_size(csv_path) > 0;
  const auto off = r.confusion.off_diagonal(), inside = r.confusion.off_diagonal_within_classes();
  // With no substitutions at all the majority condition holds vacuously;
  // the detail line says so.
  const bool majority = off == 0 || 2 * inside > off;
  return {clean->truth_box_accuracy >= kGate::kOcrClean && noisy->truth_box_accuracy >= kGate::kOcrNoisy && csv_ok &&
              majority,
          fmt("clean %.3f (>= %.2f), noisy %.3f (>= %.2f); confusion.csv written, off-diagonal %llu of which %llu "
              "inside classes%s; end-to-end clean %.3f noisy %.3f",
              clean->truth_box_accuracy, kGate::kOcrClean, noisy->truth_box_accuracy, kGate::kOcrNoisy,
              static_cast<unsigned long long>(off), static_cast<unsigned long long>(inside),
              off == 0 ? " (no substitutions, majority holds vacuously)" : "", clean->end_to_end_accuracy, noisy->end_to_end_accuracy)};
}

Verdict latency_gate() {
  std::vector<double> ms;
  for (const auto& img : ocr_report().images) ms.push_back(img.pipeline_ms);
  if (ms.empty()) return {false, "no timings"};
  std::sort(ms.begin(), ms.end());
  const double median = ms[ms.size() / 2];
  return {median <= kGate::kMedianPipelineMs,
          fmt("median %.1f ms, max %.1f ms over %zu scenes (limit %.0f ms median)", median, ms.back(), ms.size(),
              kGate::kMedianPipelineMs)};
}

Verdict fee_oracle() {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> duration(0, kGate::kMaxDurationMin);
  int mismatches = 0;
  for (int i = 0; i < kGate::kFeeCases; ++i) {
    const auto s = workload::random_schedule(rng);
    // Every fifth case sits on a tier boundary, where off-by-one errors live.
    std::int64_t d = duration(rng);
    if (i % 5 == 0) d = std::min(kGate::kMaxDurationMin, s.base_min + (i / 5 % 3) * s.block_min + (i / 15 % 3) - 1);
    if (park::compute_fee(d, s) != oracle::fee(d, s)) ++mismatches;
  }
  return {mismatches == 0, fmt("%d cases, %d mismatches", kGate::kFeeCases, mismatches)};
}

Verdict ledger_property() {
  std::mt19937_64 rng(4);
  std::size_t deliveries = 0, duplicates = 0, failures = 0;
  std::string first_failure;
  for (int trial = 0; trial < kGate::kInterleavings; ++trial) {
    const auto base = workload::random_stream(rng, 8, 60);
    const auto noisy = workload::with_duplicates(rng, base, kGate::kDuplicateShare);
    deliveries += noisy.size();
    duplicates += noisy.size() - base.size();

    park::ParkCore dedup, dup;
    for (const auto& c : base) dedup.execute(c);
    std::map<std::string, park::Money> topups, charges;
    bool ok = true;
    for (const auto& c : noisy) {
      const park::Outcome out = dup.execute(c);
      if (out.ok() && !out.replayed && out.transaction) {
        if (out.transaction->kind == park::TransactionKind::Topup)
          topups[c.user_id] += out.transaction->amount;
        else
          charges[out.trip->user_id] += out.transaction->amount;
      }
      std::map<std::string, int> active;
      for (const auto& s : dup.sessions(park::SessionState::Active)) ok &= ++active[s.plate] == 1;
    }
    ok &= dup == dedup;
    for (const auto& u : dup.registrations()) {
      const auto* w = dup.wallet(u.user_id);
      ok &= w && w->balance() == topups[u.user_id] - charges[u.user_id];
    }
    if (!ok && failures++ == 0) first_failure = fmt(" first failure in trial %d", trial);
  }
  return {failures == 0,
          fmt("%d interleavings, %zu deliveries of which %.1f%% duplicates, %zu failures%s", kGate::kInterleavings, deliveries,
              100.0 * static_cast<double>(duplicates) / static_cast<double>(deliveries), failures,
              first_failure.c_str())};
}

Verdict crash_recovery() {
  std::mt19937_64 rng(5);
  int failures = 0, restarts = 0;
  for (int seq = 0; seq < kGate::kRecoverySequences; ++seq) {
    const auto stream = workload::with_duplicates(rng, workload::random_stream(rng, 6, 80), 0.1);
    TempDir dir("accept-recovery");
    gateway::GatewayConfig cfg;
    cfg.data_dir = dir.path();
    cfg.fsync = false;

    park::ParkCore continuous;
    auto gw = std::make_unique<gateway::Gateway>(cfg);
    std::bernoulli_distribution crash(0.05);
    bool ok = true;
    for (const auto& c : stream) {
      continuous.execute(c);
      gw->submit(c);
      if (crash(rng)) {
        gw.reset();  // drop all in-memory state; only the log survives
        gw = std::make_unique<gateway::Gateway>(cfg);
        ++restarts;
        ok &= gw->state() == continuous;
      }
    }
    gw.reset();
    ok &= gateway::Gateway(cfg).state() == continuous;
    failures += ok ? 0 : 1;
  }
  return {failures == 0, fmt("%d sequences, %d mid-run restarts plus one final restart each, %d divergent",
                             kGate::kRecoverySequences, restarts, failures)};
}

Verdict simulation() {
  const park::RateSchedule schedule;
  const auto scenario = gateway::make_fleet_scenario(kGate::kSimVehicles, 7, schedule);

  TempDir dir("accept-sim");
  gateway::GatewayConfig cfg;
  cfg.data_dir = dir.path();
  cfg.fsync = false;
  gateway::Gateway gw(cfg);
  gateway::HttpServer server(gw, 8);
  const int port = server.start("127.0.0.1", 0);
  const auto report = gateway::run_scenario(scenario, "http://127.0.0.1:" + std::to_string(port));
  server.stop();

  // Independent recomputation from the script's own timestamps.
  std::map<std::string, park::Timestamp> entry_at, exit_at;
  for (const auto& e : scenario.events) (e.type == "entry" ? entry_at : exit_at)[e.plate] = e.ts;
  std::size_t fee_ok = 0;
  std::set<int> tiers;
  for (const auto& t : report.trips) {
    const auto d = park::duration_minutes(entry_at.at(t.plate), exit_at.at(t.plate));
    fee_ok += d == t.duration_min && t.fee == oracle::fee(d, schedule);
    tiers.insert(d <= schedule.grace_min ? 0
                 : d <= schedule.base_min ? 1
                 : d <= schedule.base_min + 2 * schedule.block_min ? 2
                                                                   : 3);
  }
  const bool pass = report.ok() && report.trips.size() == kGate::kSimVehicles && fee_ok == kGate::kSimVehicles &&
                    report.notifications == 2 * kGate::kSimVehicles && tiers.size() == 4;
  return {pass, fmt("%zu vehicles over HTTP: %zu trips, %zu fees match oracle, %zu notifications, %zu fee tiers "
                    "covered, %zu requests, %zu rejected",
                    kGate::kSimVehicles, report.trips.size(), fee_ok, report.notifications, tiers.size(),
                    report.requests, report.rejected)};
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by substring.
  const std::vector<std::string> filters(argv + 1, argv + argc);
  const auto selected = [&](const std::string& name) {
    if (filters.empty()) return true;
    for (const std::string& f : filters)
      if (name.find(f) != std::string::npos) return true;
    return false;
  };
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"otsu-oracle", otsu_oracle},
      {"components-oracle", components_oracle},
      {"detector-gate", detector_gate},
      {"ocr-gate", ocr_gate},
      {"pipeline-latency", latency_gate},
      {"fee-oracle", fee_oracle},
      {"ledger-idempotency", ledger_property},
      {"crash-recovery", crash_recovery},
      {"end-to-end-simulation", simulation},
  };
  int failed = 0, ran = 0;
  for (const auto& [name, run] : criteria) {
    if (!selected(name)) continue;
    ++ran;
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::printf("%s  %-22s %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 && ran > 0 ? 0 : 1;
}

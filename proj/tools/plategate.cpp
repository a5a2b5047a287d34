// Command-line front end: corpus generation, vision runs, the gateway
// server and the fleet simulator.

#include <unistd.h>

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "plategate/anpr/evaluate.hpp"
#include "plategate/anpr/rectify.hpp"
#include "plategate/gateway/server.hpp"
#include "plategate/gateway/simulate.hpp"
#include "plategate/imaging/ops.hpp"
#include "plategate/imaging/pnm.hpp"
#include "plategate/pipeline.hpp"
#include "plategate/synth/corpus.hpp"

namespace fs = std::filesystem;
using namespace plategate;

namespace {

std::unique_ptr<anpr::Recognizer> make_recognizer(const std::string& external) {
  if (external.empty()) return std::make_unique<anpr::ClassicalRecognizer>();
  return std::make_unique<anpr::ExternalProcessRecognizer>("external", external);
}

nlohmann::json detection_json(const anpr::Detection& d) {
  return {{"bbox", {d.bbox.x, d.bbox.y, d.bbox.w, d.bbox.h}}, {"angle", d.angle_deg}, {"score", d.score}};
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw std::runtime_error("cannot write " + path.string());
}

gateway::GatewayConfig config_or_default(const std::string& path) {
  return path.empty() ? gateway::GatewayConfig{} : gateway::load_config(path);
}

// Blocks SIGINT/SIGTERM on every thread started afterwards and waits for one.
class ShutdownSignal {
 public:
  ShutdownSignal() {
    sigemptyset(&set_);
    sigaddset(&set_, SIGINT);
    sigaddset(&set_, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set_, nullptr);
  }
  int wait() const {
    int sig = 0;
    sigwait(&set_, &sig);
    return sig;
  }

 private:
  sigset_t set_;
};

int cmd_gen_corpus(std::uint64_t seed, std::size_t count, const std::string& tier, const std::string& out,
                   unsigned jobs) {
  const auto entries = synth::generate_corpus(seed, count, synth::parse_tier(tier), out, jobs);
  std::printf("wrote %zu scenes and %s\n", entries.size(), (fs::path(out) / "manifest.jsonl").c_str());
  return 0;
}

int cmd_detect(const std::string& image, const std::string& external) {
  const auto recognizer = make_recognizer(external);
  for (const auto& d : recognizer->detect(imaging::read_image(image))) std::cout << detection_json(d).dump() << '\n';
  return 0;
}

int cmd_ocr(const std::string& image, const ocr::RecognizeOptions& options) {
  // The whole image is taken as the plate.
  const imaging::GrayImage gray = imaging::read_gray(image);
  anpr::Detection det;
  det.bbox = {0, 0, gray.width(), gray.height()};
  const auto atlas = ocr::GlyphAtlas::build();
  const auto reading = ocr::recognize_plate(anpr::rectify_and_normalize(gray, det), atlas, options);
  std::cout << ocr::format_reading(reading);
  return 0;
}

int cmd_pipeline(const std::string& image, const std::string& external, bool json,
                 const ocr::RecognizeOptions& options) {
  const auto recognizer = make_recognizer(external);
  const auto atlas = ocr::GlyphAtlas::build();
  const PipelineResult r = read_plate(imaging::read_image(image), *recognizer, atlas, 3, options);
  if (json) {
    nlohmann::json j = {{"elapsed_seconds", r.elapsed_seconds}, {"detections", nlohmann::json::array()}};
    for (const auto& d : r.detections) j["detections"].push_back(detection_json(d));
    j["plate"] = r.reading ? nlohmann::json(r.reading->text) : nlohmann::json(nullptr);
    if (r.reading) {
      j["bbox"] = detection_json(*r.chosen)["bbox"];
      j["char_confidences"] = r.reading->char_confidences;
      j["low_confidence"] = r.reading->low_confidence;
      j["grammar_corrected"] = r.reading->grammar_corrected;
    }
    std::cout << j.dump() << '\n';
  } else if (r.reading) {
    std::cout << ocr::format_reading(*r.reading);
  }
  if (!r.reading) {
    std::cerr << "no plate found in " << image << '\n';
    return 2;
  }
  return 0;
}

int cmd_evaluate(const std::string& manifest_path, const std::string& report_path, std::string confusion_path,
                 const std::string& external, unsigned jobs) {
  const fs::path base = fs::path(manifest_path).parent_path();
  const auto manifest = synth::read_manifest(manifest_path);
  const auto recognizer = make_recognizer(external);
  const auto det = anpr::evaluate_detector(*recognizer, manifest, base, jobs);
  std::string text = anpr::report_jsonl(det);
  if (!manifest.empty()) {
    const auto atlas = ocr::GlyphAtlas::build();
    const OcrReport ocr_report = evaluate_ocr(manifest, base, *recognizer, atlas, jobs);
    text += ocr_report_jsonl(ocr_report);
    if (confusion_path.empty()) confusion_path = (base / "confusion.csv").string();
    write_file(confusion_path, ocr_report.confusion.to_csv());
    std::cerr << "confusion matrix written to " << confusion_path << '\n';
  }
  if (report_path.empty())
    std::cout << text;
  else
    write_file(report_path, text);
  return 0;
}

int cmd_serve(const std::string& config_path, std::optional<int> port, const std::string& data) {
  gateway::GatewayConfig cfg = config_or_default(config_path);
  if (port) cfg.port = *port;
  if (!data.empty()) cfg.data_dir = data;
  const ShutdownSignal signals;
  gateway::Gateway gw(cfg);
  gateway::HttpServer server(gw, cfg.threads);
  const int bound = server.start(cfg.host, cfg.port);
  std::printf("plategate gateway listening on http://%s:%d (data %s, %lld events replayed)\n", cfg.host.c_str(),
              bound, cfg.data_dir.c_str(), static_cast<long long>(gw.last_seq()));
  std::fflush(stdout);
  signals.wait();
  server.stop();
  return 0;
}

int cmd_simulate(const std::string& scenario_path, const std::string& url, const std::string& config_path,
                 const std::string& data) {
  const gateway::Scenario scenario = gateway::load_scenario(scenario_path);
  gateway::SimulationReport report;
  if (!url.empty()) {
    report = gateway::run_scenario(scenario, url);
  } else {
    gateway::GatewayConfig cfg = config_or_default(config_path);
    cfg.host = "127.0.0.1";
    cfg.port = 0;
    const bool scratch = data.empty();
    cfg.data_dir = scratch ? fs::temp_directory_path() / ("plategate-sim-" + std::to_string(::getpid())) : fs::path(data);
    if (scratch) fs::remove_all(cfg.data_dir);
    {
      gateway::Gateway gw(cfg);
      gateway::HttpServer server(gw, cfg.threads);
      const int port = server.start(cfg.host, 0);
      report = gateway::run_scenario(scenario, "http://127.0.0.1:" + std::to_string(port));
    }
    if (scratch) fs::remove_all(cfg.data_dir);
  }
  std::cout << report.to_json().dump(2) << '\n';
  return report.ok() ? 0 : 1;
}

int cmd_gen_scenario(std::size_t vehicles, std::uint64_t seed, const std::string& config_path,
                     const std::string& out) {
  const auto cfg = config_or_default(config_path);
  const auto scenario = gateway::make_fleet_scenario(vehicles, seed, cfg.schedule);
  write_file(out, gateway::scenario_to_json(scenario).dump(2) + "\n");
  std::printf("wrote %zu vehicles, %zu events to %s\n", scenario.vehicles.size(), scenario.events.size(),
              out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plategate: plate recognition and parking gateway"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  std::size_t count = 200;
  std::string tier = "clean", out, image, external, manifest, report, confusion, config, data, scenario, url;
  unsigned jobs = 0;
  std::size_t vehicles = 50;
  bool json = false;
  ocr::RecognizeOptions ocr_options;

  auto* gen = app.add_subcommand("gen-corpus", "Render a synthetic scene corpus with manifest.jsonl");
  gen->add_option("--seed", seed, "Corpus seed")->required();
  gen->add_option("--count", count, "Number of scenes")->required()->check(CLI::PositiveNumber);
  gen->add_option("--tier", tier, "Noise tier")->check(CLI::IsMember({"clean", "noisy"}));
  gen->add_option("--out", out, "Output directory")->required();
  gen->add_option("--jobs", jobs, "Worker threads (0 = all cores)");

  auto* detect = app.add_subcommand("detect", "Print plate detections as JSON lines");
  detect->add_option("image", image, "PGM/PPM image")->required()->check(CLI::ExistingFile);
  detect->add_option("--external", external, "External detector command");

  auto* ocr_cmd = app.add_subcommand("ocr", "Read a plate image (the whole image is the plate)");
  ocr_cmd->add_option("image", image, "PGM/PPM plate image")->required()->check(CLI::ExistingFile);
  ocr_cmd->add_option("--low-confidence", ocr_options.low_confidence_threshold,
                      "Flag readings with any character NCC below this")
      ->check(CLI::Range(-1.0, 1.0));

  auto* pipe = app.add_subcommand("pipeline", "Detect, rectify and read the plate in a scene");
  pipe->add_option("image", image, "PGM/PPM scene")->required()->check(CLI::ExistingFile);
  pipe->add_option("--external", external, "External detector command");
  pipe->add_flag("--json", json, "Print one JSON record instead of the terminal format");
  pipe->add_option("--low-confidence", ocr_options.low_confidence_threshold,
                   "Flag readings with any character NCC below this")
      ->check(CLI::Range(-1.0, 1.0));

  auto* eval = app.add_subcommand("evaluate", "Detector and OCR report over a corpus manifest");
  eval->add_option("--manifest", manifest, "manifest.jsonl")->required()->check(CLI::ExistingFile);
  eval->add_option("--report", report, "Write the JSONL report here instead of stdout");
  eval->add_option("--confusion", confusion, "Confusion CSV path (default: next to the manifest)");
  eval->add_option("--external", external, "External detector command");
  eval->add_option("--jobs", jobs, "Worker threads (0 = all cores)");

  std::optional<int> serve_port;
  auto* serve = app.add_subcommand("serve", "Run the HTTP gateway");
  serve->add_option("--port", serve_port, "Listen port (overrides config)")->check(CLI::Range(0, 65535));
  serve->add_option("--data", data, "Data directory (overrides config)");
  serve->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);

  auto* sim = app.add_subcommand("simulate", "Replay a scripted fleet against a gateway");
  sim->add_option("--scenario", scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--url", url, "Running gateway, e.g. http://127.0.0.1:8080 (default: embedded server)");
  sim->add_option("--config", config, "Config for the embedded server")->check(CLI::ExistingFile);
  sim->add_option("--data", data, "Data directory for the embedded server (default: scratch)");

  auto* gen_sc = app.add_subcommand("gen-scenario", "Write a fleet scenario spanning every fee tier");
  gen_sc->add_option("--vehicles", vehicles, "Number of vehicles")->check(CLI::PositiveNumber);
  gen_sc->add_option("--seed", seed, "Scenario seed");
  gen_sc->add_option("--config", config, "Config whose schedule shapes the stays")->check(CLI::ExistingFile);
  gen_sc->add_option("--out", out, "Output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen_corpus(seed, count, tier, out, jobs);
    if (*detect) return cmd_detect(image, external);
    if (*ocr_cmd) return cmd_ocr(image, ocr_options);
    if (*pipe) return cmd_pipeline(image, external, json, ocr_options);
    if (*eval) return cmd_evaluate(manifest, report, confusion, external, jobs);
    if (*serve) return cmd_serve(config, serve_port, data);
    if (*sim) return cmd_simulate(scenario, url, config, data);
    if (*gen_sc) return cmd_gen_scenario(vehicles, seed, config, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

// Command-line front end for the SSK/ISAC link simulator.
//
// Subcommands:
//   ber        Monte Carlo BER sweep, one CSV per antenna count
//   sense      FMCW / CW sensing sweep, aggregate CSV (optionally per-scene)
//   ambiguity  |chi(tau, fd)|^2 surface of the configured waveform
//   linkbudget Path-loss / Doppler report as JSON
//
// Exit codes: 0 success, 2 configuration error, 3 estimation failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "isac/config.hpp"
#include "isac/errors.hpp"
#include "isac/experiments.hpp"

namespace {

namespace fs = std::filesystem;

struct CliOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  std::optional<std::string> waveform;
  std::optional<std::string> method;
  bool scenes = false;
};

isac::ExperimentConfig load_config(const CliOptions& opt) {
  isac::ExperimentConfig config;
  if (!opt.config_path.empty())
    config = isac::ExperimentConfig::from_json_file(opt.config_path);
  if (opt.seed) config.seed = *opt.seed;
  if (opt.trials) {
    config.trials = *opt.trials;
    config.sense_trials = *opt.trials;
  }
  if (opt.waveform) config.waveform = isac::waveform_kind_from_string(*opt.waveform);
  if (opt.method) config.beat_method = isac::beat_method_from_string(*opt.method);
  config.validate();
  return config;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw isac::ConfigError("cannot open output file " + path.string());
  return os;
}

void run_ber(const CliOptions& opt) {
  const auto config = load_config(opt);
  fs::create_directories(opt.out_dir);
  const auto curves = isac::run_ber_sweep(config);
  const std::string label = isac::waveform_file_label(config.waveform);
  for (const auto& curve : curves) {
    const fs::path path = fs::path(opt.out_dir) /
                          ("ber_" + std::to_string(curve.n_tx) + "_" + label + ".csv");
    auto os = open_output(path);
    isac::write_ber_csv(curve, config, os);
    std::cout << path.string() << "\n";
  }
}

void run_sense(const CliOptions& opt) {
  const auto config = load_config(opt);
  fs::create_directories(opt.out_dir);
  std::vector<isac::SceneRecord> scenes;
  const auto curve =
      isac::run_sensing_sweep(config, opt.scenes ? &scenes : nullptr);
  const std::string label = isac::waveform_file_label(config.waveform);
  const fs::path path = fs::path(opt.out_dir) / ("sense_" + label + ".csv");
  auto os = open_output(path);
  isac::write_accuracy_csv(curve, config, os);
  std::cout << path.string() << "\n";
  if (opt.scenes) {
    const fs::path spath = fs::path(opt.out_dir) / ("scenes_" + label + ".csv");
    auto sos = open_output(spath);
    isac::write_scene_csv(scenes, config, sos);
    std::cout << spath.string() << "\n";
  }
}

void run_ambiguity_cmd(const CliOptions& opt) {
  const auto config = load_config(opt);
  fs::create_directories(opt.out_dir);
  const auto surface = isac::run_ambiguity(config);
  const fs::path path = fs::path(opt.out_dir) / "ambiguity.csv";
  auto os = open_output(path);
  isac::write_ambiguity_csv(surface, config, os);
  std::cout << path.string() << "\n";
}

void run_linkbudget(const CliOptions& opt) {
  const auto config = load_config(opt);
  fs::create_directories(opt.out_dir);
  const fs::path path = fs::path(opt.out_dir) / "linkbudget.json";
  auto os = open_output(path);
  os << isac::run_link_budget(config);
  std::cout << path.string() << "\n";
}

void add_common_flags(CLI::App* app, CliOptions& opt) {
  app->add_option("--config", opt.config_path, "JSON config file");
  app->add_option("--seed", opt.seed, "Master RNG seed");
  app->add_option("--out", opt.out_dir, "Output directory");
  app->add_option("--trials", opt.trials, "Monte Carlo trials per point");
  app->add_option("--waveform", opt.waveform, "chirp|sinusoid (also v_lfm, up_chirp, down_chirp)");
  app->add_option("--method", opt.method, "Beat estimator: fft|music");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SSK-modulated integrated sensing and communication simulator"};
  app.require_subcommand(1);

  CliOptions opt;
  auto* ber = app.add_subcommand("ber", "BER vs SNR sweep");
  auto* sense = app.add_subcommand("sense", "Range/velocity sensing sweep");
  auto* ambiguity = app.add_subcommand("ambiguity", "Ambiguity surface");
  auto* linkbudget = app.add_subcommand("linkbudget", "Link budget report");
  for (auto* sub : {ber, sense, ambiguity, linkbudget}) add_common_flags(sub, opt);
  sense->add_flag("--scenes", opt.scenes, "Also write per-scene CSV rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (ber->parsed()) run_ber(opt);
    if (sense->parsed()) run_sense(opt);
    if (ambiguity->parsed()) run_ambiguity_cmd(opt);
    if (linkbudget->parsed()) run_linkbudget(opt);
  } catch (const isac::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const isac::EstimationError& e) {
    std::cerr << "estimation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

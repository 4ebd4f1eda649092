// Command-line front end: runs config-file experiments or cataloged
// presets and writes one CSV per curve.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "dcsk/experiment.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string default_out(const std::string& config_path) {
  std::filesystem::path path(config_path);
  path.replace_extension(".csv");
  return path.filename().string();
}

int default_workers() {
  const unsigned hardware = std::thread::hardware_concurrency();
  return hardware == 0 ? 1 : static_cast<int>(hardware);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Chaos-modulated relay-network link simulator: Monte-Carlo bit error "
      "rates with closed-form overlays, written as CSV"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_name;
  std::string out_path;
  std::uint64_t seed = 1;
  bool seed_given = false;
  int workers = default_workers();

  CLI::App* run = app.add_subcommand(
      "run", "Simulate the experiment described by a key=value config file");
  run->add_option("config", config_path, "Config file path")->required();
  run->add_option("--out", out_path,
                  "Output CSV path (default: config name with .csv)");
  run->add_option("--seed", seed, "Override the config's master seed")
      ->each([&](const std::string&) { seed_given = true; });
  run->add_option("--workers", workers, "Worker threads (default: all cores)")
      ->check(CLI::PositiveNumber);

  CLI::App* preset = app.add_subcommand(
      "preset", "Run a frozen scenario from the catalog");
  preset->add_option("name", preset_name, "Preset name (see list-presets)")
      ->required();
  preset->add_option("--seed", seed, "Master seed (default 1)");
  preset->add_option("--out", out_path,
                     "Output CSV path (default: <name>.csv; families get "
                     "-<label> suffixes)");
  preset->add_option("--workers", workers,
                     "Worker threads (default: all cores)")
      ->check(CLI::PositiveNumber);

  CLI::App* list = app.add_subcommand("list-presets",
                                      "Show the scenario catalog and exit");

  CLI::App* analytic = app.add_subcommand(
      "analytic-only",
      "Evaluate only the closed-form overlays of a config file (no "
      "simulation; ber_sim columns stay empty)");
  analytic->add_option("config", config_path, "Config file path")->required();
  analytic->add_option("--out", out_path,
                       "Output CSV path (default: config name with .csv)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const std::string& name : dcsk::preset_names()) {
        std::cout << name << "  -  " << dcsk::preset_description(name)
                  << "\n";
      }
      return 0;
    }

    dcsk::ExperimentSpec spec;
    if (preset->parsed()) {
      spec = dcsk::make_preset(preset_name, seed);
      if (out_path.empty()) out_path = preset_name + ".csv";
    } else {
      spec = dcsk::parse_config(read_file(config_path));
      if (seed_given) {
        for (dcsk::CurveSpec& curve : spec.curves) curve.seed = seed;
      }
      if (analytic->parsed()) {
        for (dcsk::CurveSpec& curve : spec.curves) curve.simulate = false;
      }
      if (out_path.empty()) out_path = default_out(config_path);
    }
    return dcsk::run_experiment(spec, out_path, std::cerr, workers);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}

#include "dcsk/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dcsk/analytic.hpp"
#include "dcsk/channel.hpp"

namespace dcsk {

namespace {

// ---------------------------------------------------------------------------
// Config-document parsing
// ---------------------------------------------------------------------------

struct RawEntry {
  std::string value;
  int line = 0;
};

using RawConfig = std::map<std::string, RawEntry>;

[[noreturn]] void fail_line(int line, const std::string& message) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + message);
}

std::string trim(std::string_view text) {
  const auto begin = text.find_first_not_of(" \t");
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(" \t");
  return std::string(text.substr(begin, end - begin + 1));
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "topology",   "protocol", "users",      "m_r",       "m_d",
      "d_sd",       "d_sr",     "d_rd",       "m",         "paths",
      "omegas",     "delays",   "two_beta",   "ebn0_start", "ebn0_stop",
      "ebn0_step",  "min_errors", "max_bits", "seed",      "overlays"};
  return keys;
}

RawConfig tokenize(const std::string& text) {
  RawConfig entries;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) fail_line(number, "expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (known_keys().count(key) == 0) {
      fail_line(number, "unknown key '" + key + "'");
    }
    if (entries.count(key) != 0) {
      fail_line(number, "duplicate key '" + key + "'");
    }
    if (value.empty()) fail_line(number, "key '" + key + "' has no value");
    entries.emplace(key, RawEntry{value, number});
  }
  return entries;
}

double to_double(const std::string& key, const RawEntry& entry) {
  double value = 0.0;
  const char* begin = entry.value.data();
  const char* end = begin + entry.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    fail_line(entry.line, "key '" + key + "' expects a number, got '" +
                              entry.value + "'");
  }
  return value;
}

long to_long(const std::string& key, const RawEntry& entry) {
  long value = 0;
  const char* begin = entry.value.data();
  const char* end = begin + entry.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    fail_line(entry.line, "key '" + key + "' expects an integer, got '" +
                              entry.value + "'");
  }
  return value;
}

std::uint64_t to_u64(const std::string& key, const RawEntry& entry) {
  std::uint64_t value = 0;
  const char* begin = entry.value.data();
  const char* end = begin + entry.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    fail_line(entry.line, "key '" + key +
                              "' expects an unsigned integer, got '" +
                              entry.value + "'");
  }
  return value;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto stop = comma == std::string::npos ? value.size() : comma;
    items.push_back(trim(value.substr(start, stop - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return items;
}

std::vector<double> to_doubles(const std::string& key, const RawEntry& entry) {
  std::vector<double> values;
  for (const std::string& item : split_list(entry.value)) {
    values.push_back(to_double(key, RawEntry{item, entry.line}));
  }
  return values;
}

std::vector<int> to_ints(const std::string& key, const RawEntry& entry) {
  std::vector<int> values;
  for (const std::string& item : split_list(entry.value)) {
    const long v = to_long(key, RawEntry{item, entry.line});
    values.push_back(static_cast<int>(v));
  }
  return values;
}

int positive_int(const std::string& key, const RawEntry& entry) {
  const long value = to_long(key, entry);
  if (value < 1) fail_line(entry.line, "key '" + key + "' must be positive");
  return static_cast<int>(value);
}

// ---------------------------------------------------------------------------
// Preset catalog
// ---------------------------------------------------------------------------

struct Preset {
  std::string description;
  std::vector<CurveSpec> curves;
};

std::vector<double> make_grid(double start, double stop, double step) {
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double value = start + i * step;
    if (value > stop + 1e-9) break;
    grid.push_back(value);
  }
  return grid;
}

// Two users, unit distances, single antennas, m=1 with two equal paths,
// 128-chip frames: the baseline every scenario below starts from.
SystemConfig baseline_config() {
  SystemConfig config;
  config.topology = Topology::CD;
  config.protocol = Protocol::EF;
  config.users = 2;
  config.relay_antennas = 1;
  config.dest_antennas = 1;
  config.d_sd = 1.0;
  config.d_sr = 1.0;
  config.d_rd = 1.0;
  config.fading = uniform_profile(1.0, 2);
  config.two_beta = 128;
  return config;
}

CurveSpec make_curve(std::string label, SystemConfig config,
                     std::vector<double> grid, bool simulate = true,
                     bool want_approx = false) {
  CurveSpec curve;
  curve.label = std::move(label);
  curve.config = std::move(config);
  curve.ebn0_grid = std::move(grid);
  curve.simulate = simulate;
  curve.want_approx = want_approx;
  return curve;
}

const std::vector<std::pair<std::string, Preset>>& catalog() {
  static const std::vector<std::pair<std::string, Preset>> presets = [] {
    std::vector<std::pair<std::string, Preset>> table;
    const std::vector<double> wide = make_grid(6.0, 24.0, 2.0);
    const std::vector<double> mid = make_grid(6.0, 20.0, 2.0);

    {
      SystemConfig config = baseline_config();
      table.push_back({"fig6a",
                       {"relay topology, error-free forwarding, single "
                        "antennas, matched distances",
                        {make_curve("", config, wide)}}});
      config.protocol = Protocol::DF;
      table.push_back({"fig6b",
                       {"relay topology, detect-and-forward, single "
                        "antennas, matched distances",
                        {make_curve("", config, wide)}}});
    }
    {
      SystemConfig config = baseline_config();
      config.topology = Topology::NC;
      table.push_back({"fig6nc",
                       {"direct link without cooperation",
                        {make_curve("", config, wide)}}});
    }
    {
      SystemConfig config = baseline_config();
      config.topology = Topology::CC;
      config.d_sr = 1.6;  // inter-user distance
      table.push_back({"fig6cc",
                       {"user-pair cooperation without a dedicated relay",
                        {make_curve("", config, wide)}}});
    }
    {
      Preset preset;
      preset.description =
          "relay topology, both forwarding rules, fading depth swept";
      const std::pair<double, const char*> depths[] = {
          {0.5, "m05"}, {0.8, "m08"}, {1.0, "m10"}, {2.0, "m20"}};
      for (const Protocol protocol : {Protocol::EF, Protocol::DF}) {
        for (const auto& [m, tag] : depths) {
          SystemConfig config = baseline_config();
          config.protocol = protocol;
          config.fading = uniform_profile(m, 2);
          const std::string label =
              std::string(protocol == Protocol::EF ? "ef-" : "df-") + tag;
          preset.curves.push_back(make_curve(label, config, wide));
        }
      }
      table.push_back({"fig7", std::move(preset)});
    }
    {
      Preset preset;
      preset.description =
          "relay topology, detect-and-forward, antenna pairs swept";
      const std::pair<int, int> pairs[] = {
          {1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 2}};
      for (const auto& [mr, md] : pairs) {
        SystemConfig config = baseline_config();
        config.protocol = Protocol::DF;
        config.relay_antennas = mr;
        config.dest_antennas = md;
        const std::string label =
            "mr" + std::to_string(mr) + "md" + std::to_string(md);
        preset.curves.push_back(make_curve(label, config, wide));
      }
      table.push_back({"fig8", std::move(preset)});
    }
    {
      Preset preset;
      preset.description =
          "relay topology, detect-and-forward, dual antennas, relay moved "
          "toward the destination";
      SystemConfig config = baseline_config();
      config.protocol = Protocol::DF;
      config.relay_antennas = 2;
      config.dest_antennas = 2;
      preset.curves.push_back(make_curve("base", config, mid));
      config.d_sr = 0.8;
      config.d_rd = 0.4;
      preset.curves.push_back(make_curve("near", config, mid));
      table.push_back({"fig9", std::move(preset)});
    }
    {
      Preset preset;
      preset.description =
          "relay topology, detect-and-forward, dual antennas, frame length "
          "swept";
      for (const long two_beta : {64L, 128L, 256L}) {
        SystemConfig config = baseline_config();
        config.protocol = Protocol::DF;
        config.relay_antennas = 2;
        config.dest_antennas = 2;
        config.two_beta = two_beta;
        preset.curves.push_back(
            make_curve("b" + std::to_string(two_beta), config, mid));
      }
      table.push_back({"fig10", std::move(preset)});
    }
    {
      Preset preset;
      preset.description =
          "closed forms only: relay antenna count swept at two destination "
          "antennas";
      for (int mr = 1; mr <= 6; ++mr) {
        SystemConfig config = baseline_config();
        config.protocol = Protocol::DF;
        config.relay_antennas = mr;
        config.dest_antennas = 2;
        preset.curves.push_back(make_curve("mr" + std::to_string(mr), config,
                                           make_grid(6.0, 30.0, 2.0),
                                           /*simulate=*/false));
      }
      table.push_back({"fig11", std::move(preset)});
    }
    {
      Preset direct;
      direct.description =
          "closed forms only: direct link, exact versus approximate, path "
          "count swept";
      Preset relay;
      relay.description =
          "closed forms only: relay topology, exact versus approximate, "
          "path count swept";
      for (const int paths : {2, 4, 8}) {
        SystemConfig config = baseline_config();
        config.topology = Topology::NC;
        config.fading = uniform_profile(1.0, paths);
        const std::string label = "l" + std::to_string(paths);
        direct.curves.push_back(make_curve(label, config, wide,
                                           /*simulate=*/false,
                                           /*want_approx=*/true));
        config.topology = Topology::CD;
        relay.curves.push_back(make_curve(label, config, wide,
                                          /*simulate=*/false,
                                          /*want_approx=*/true));
      }
      table.push_back({"fig12a", std::move(direct)});
      table.push_back({"fig12b", std::move(relay)});
    }
    return table;
  }();
  return presets;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& [key, preset] : catalog()) {
    if (key == name) return preset;
  }
  std::string names;
  for (const auto& [key, preset] : catalog()) {
    if (!names.empty()) names += ", ";
    names += key;
  }
  throw std::invalid_argument("unknown preset '" + name +
                              "' (available: " + names + ")");
}

// ---------------------------------------------------------------------------
// CSV formatting
// ---------------------------------------------------------------------------

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

std::string format_long(long value) {
  char buffer[24];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

std::filesystem::path curve_path(const std::string& out_path,
                                 const std::string& label) {
  std::filesystem::path path(out_path);
  if (label.empty()) return path;
  const std::string stem = path.stem().string();
  const std::string extension = path.extension().string();
  std::filesystem::path named = path.parent_path();
  named /= stem + "-" + label + extension;
  return named;
}

std::string curve_name(const ExperimentSpec& spec, const CurveSpec& curve) {
  if (curve.label.empty()) return spec.name;
  return spec.name + "/" + curve.label;
}

}  // namespace

ExperimentSpec parse_config(const std::string& text) {
  const RawConfig entries = tokenize(text);

  std::vector<std::string> missing;
  for (const char* required : {"topology", "ebn0_start", "ebn0_stop"}) {
    if (entries.count(required) == 0) missing.emplace_back(required);
  }
  if (!missing.empty()) {
    std::string message = "missing required keys:";
    for (std::size_t i = 0; i < missing.size(); ++i) {
      message += (i == 0 ? " " : ", ") + missing[i];
    }
    throw std::runtime_error(message);
  }

  CurveSpec curve;
  SystemConfig& config = curve.config;

  const RawEntry& topology = entries.at("topology");
  if (topology.value == "nc") {
    config.topology = Topology::NC;
  } else if (topology.value == "cc") {
    config.topology = Topology::CC;
  } else if (topology.value == "cd") {
    config.topology = Topology::CD;
  } else {
    fail_line(topology.line, "topology must be nc, cc, or cd");
  }

  config.protocol = Protocol::EF;
  if (const auto it = entries.find("protocol"); it != entries.end()) {
    if (it->second.value == "ef") {
      config.protocol = Protocol::EF;
    } else if (it->second.value == "df") {
      config.protocol = Protocol::DF;
    } else {
      fail_line(it->second.line, "protocol must be ef or df");
    }
  }

  config.users = 2;
  if (const auto it = entries.find("users"); it != entries.end()) {
    config.users = positive_int("users", it->second);
  }
  config.relay_antennas = 1;
  if (const auto it = entries.find("m_r"); it != entries.end()) {
    config.relay_antennas = positive_int("m_r", it->second);
  }
  config.dest_antennas = 1;
  if (const auto it = entries.find("m_d"); it != entries.end()) {
    config.dest_antennas = positive_int("m_d", it->second);
  }
  config.d_sd = 1.0;
  config.d_sr = 1.0;
  config.d_rd = 1.0;
  if (const auto it = entries.find("d_sd"); it != entries.end()) {
    config.d_sd = to_double("d_sd", it->second);
  }
  if (const auto it = entries.find("d_sr"); it != entries.end()) {
    config.d_sr = to_double("d_sr", it->second);
  }
  if (const auto it = entries.find("d_rd"); it != entries.end()) {
    config.d_rd = to_double("d_rd", it->second);
  }

  double m = 1.0;
  if (const auto it = entries.find("m"); it != entries.end()) {
    m = to_double("m", it->second);
    if (!(m > 0.0)) fail_line(it->second.line, "key 'm' must be positive");
  }
  int paths = 2;
  if (const auto it = entries.find("paths"); it != entries.end()) {
    paths = positive_int("paths", it->second);
  }
  config.fading = uniform_profile(m, paths);
  if (const auto it = entries.find("omegas"); it != entries.end()) {
    const std::vector<double> omegas = to_doubles("omegas", it->second);
    if (static_cast<int>(omegas.size()) != paths) {
      fail_line(it->second.line, "key 'omegas' must list exactly " +
                                     std::to_string(paths) + " values");
    }
    config.fading.omegas =
        Eigen::Map<const Eigen::ArrayXd>(omegas.data(), paths);
  }
  if (const auto it = entries.find("delays"); it != entries.end()) {
    const std::vector<int> delays = to_ints("delays", it->second);
    if (static_cast<int>(delays.size()) != paths) {
      fail_line(it->second.line, "key 'delays' must list exactly " +
                                     std::to_string(paths) + " values");
    }
    config.fading.delays =
        Eigen::Map<const Eigen::ArrayXi>(delays.data(), paths);
  }

  config.two_beta = 128;
  if (const auto it = entries.find("two_beta"); it != entries.end()) {
    const long two_beta = to_long("two_beta", it->second);
    if (two_beta < 2) {
      fail_line(it->second.line, "key 'two_beta' must be at least 2");
    }
    config.two_beta = two_beta;
  }

  const double start = to_double("ebn0_start", entries.at("ebn0_start"));
  const RawEntry& stop_entry = entries.at("ebn0_stop");
  const double stop = to_double("ebn0_stop", stop_entry);
  if (stop < start) {
    fail_line(stop_entry.line, "ebn0_stop must not be below ebn0_start");
  }
  double step = 2.0;
  if (const auto it = entries.find("ebn0_step"); it != entries.end()) {
    step = to_double("ebn0_step", it->second);
    if (!(step > 0.0)) {
      fail_line(it->second.line, "key 'ebn0_step' must be positive");
    }
  }
  curve.ebn0_grid = make_grid(start, stop, step);

  if (const auto it = entries.find("min_errors"); it != entries.end()) {
    const long min_errors = to_long("min_errors", it->second);
    if (min_errors < 1) {
      fail_line(it->second.line, "key 'min_errors' must be positive");
    }
    curve.rule.min_errors = min_errors;
  }
  if (const auto it = entries.find("max_bits"); it != entries.end()) {
    const long max_bits = to_long("max_bits", it->second);
    if (max_bits < 1) {
      fail_line(it->second.line, "key 'max_bits' must be positive");
    }
    curve.rule.max_bits = max_bits;
  }
  curve.seed = 1;
  if (const auto it = entries.find("seed"); it != entries.end()) {
    curve.seed = to_u64("seed", it->second);
  }

  curve.want_exact = true;
  curve.want_approx = false;
  if (const auto it = entries.find("overlays"); it != entries.end()) {
    curve.want_exact = false;
    bool none = false;
    const std::vector<std::string> tokens = split_list(it->second.value);
    for (const std::string& token : tokens) {
      if (token == "none") {
        none = true;
      } else if (token == "exact") {
        curve.want_exact = true;
      } else if (token == "approx") {
        curve.want_approx = true;
      } else {
        fail_line(it->second.line,
                  "key 'overlays' accepts none, exact, approx; got '" +
                      token + "'");
      }
    }
    if (none && (curve.want_exact || curve.want_approx)) {
      fail_line(it->second.line, "overlays 'none' excludes other values");
    }
  }

  try {
    validate_config(config);
  } catch (const std::exception& ex) {
    throw std::runtime_error(std::string("config: ") + ex.what());
  }

  ExperimentSpec spec;
  spec.name = "config";
  spec.curves.push_back(std::move(curve));
  return spec;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  names.reserve(catalog().size());
  for (const auto& [key, preset] : catalog()) names.push_back(key);
  return names;
}

std::string preset_description(const std::string& name) {
  return find_preset(name).description;
}

ExperimentSpec make_preset(const std::string& name, std::uint64_t seed) {
  ExperimentSpec spec;
  spec.name = name;
  spec.curves = find_preset(name).curves;
  for (CurveSpec& curve : spec.curves) curve.seed = seed;
  return spec;
}

AnalyticOverlays overlays_for(const SystemConfig& config, bool want_exact,
                              bool want_approx) {
  AnalyticOverlays overlays;
  const double corr =
      static_cast<double>(config.two_beta) / (2.0 * config.users);
  const double m = config.fading.m;
  const int paths = static_cast<int>(config.fading.omegas.size());
  const int users = config.users;

  if (config.topology == Topology::NC) {
    const int md = config.dest_antennas;
    const double d_sd = config.d_sd;
    const auto direct_budget = [=](double ebn0_db) {
      return make_link_budget(ebn0_db, m, paths, users, 1, md, d_sd, 1.0, 1.0);
    };
    if (want_exact) {
      overlays.exact = [=](double ebn0_db) {
        return exact_ber(direct_budget(ebn0_db).sd, md * corr);
      };
    }
    if (want_approx) {
      overlays.approx = [=](double ebn0_db) {
        const GammaDist sd = direct_budget(ebn0_db).sd;
        return approx_ber(sd.shape, sd.scale, md * corr);
      };
    }
    return overlays;
  }

  if (config.topology == Topology::CC) {
    const double d_sd = config.d_sd;
    const double d_partner = config.d_sr;
    if (want_exact) {
      overlays.exact = [=](double ebn0_db) {
        return exact_ber_cc(ebn0_db, m, paths, users, d_sd, d_partner, corr);
      };
    }
    // No closed-form approximation exists for the cooperative pair.
    return overlays;
  }

  const int mr = config.relay_antennas;
  const int md = config.dest_antennas;
  const double d_sd = config.d_sd;
  const double d_sr = config.d_sr;
  const double d_rd = config.d_rd;
  const bool ef = config.protocol == Protocol::EF;
  const auto relay_budget = [=](double ebn0_db) {
    return make_link_budget(ebn0_db, m, paths, users, mr, md, d_sd, d_sr,
                            d_rd);
  };
  if (want_exact) {
    overlays.exact = [=](double ebn0_db) {
      const LinkBudget budget = relay_budget(ebn0_db);
      return ef ? exact_ber_cd_ef(budget, corr)
                : exact_ber_cd_df(budget, corr);
    };
  }
  // The approximation needs the error-free rule and matched branch scales;
  // mismatched geometry surfaces as a throw and an empty column downstream.
  if (want_approx && ef) {
    overlays.approx = [=](double ebn0_db) {
      return approx_ber_cd_ef(relay_budget(ebn0_db), corr);
    };
  }
  return overlays;
}

BerCurve run_curve(const CurveSpec& curve, int workers) {
  const AnalyticOverlays overlays =
      overlays_for(curve.config, curve.want_exact, curve.want_approx);
  if (curve.simulate) {
    return sweep(curve.config, curve.ebn0_grid, curve.rule, curve.seed,
                 overlays, workers);
  }
  if (curve.ebn0_grid.empty()) {
    throw std::invalid_argument("run_curve: the Eb/N0 grid must not be empty");
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  BerCurve result;
  for (const double ebn0_db : curve.ebn0_grid) {
    BerPoint point;
    point.ebn0_db = ebn0_db;
    result.points.push_back(point);
    result.point_errors.emplace_back();
    double exact_value = nan;
    double approx_value = nan;
    if (overlays.exact) {
      try {
        exact_value = overlays.exact(ebn0_db);
      } catch (const std::exception&) {
      }
    }
    if (overlays.approx) {
      try {
        approx_value = overlays.approx(ebn0_db);
      } catch (const std::exception&) {
      }
    }
    result.exact.push_back(exact_value);
    result.approx.push_back(approx_value);
  }
  return result;
}

std::string curve_to_csv(const BerCurve& curve) {
  std::vector<std::size_t> order(curve.points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return curve.points[a].ebn0_db < curve.points[b].ebn0_db;
                   });

  std::string out =
      "ebn0_db,ber_sim,ci_low,ci_high,bits,errors,ber_exact,ber_approx\n";
  for (const std::size_t i : order) {
    const BerPoint& point = curve.points[i];
    const bool have_sim =
        curve.point_errors[i].empty() && point.bits_simulated > 0;
    out += format_double(point.ebn0_db);
    out += ',';
    if (have_sim) out += format_double(point.ber_estimate);
    out += ',';
    if (have_sim) out += format_double(point.ci_low);
    out += ',';
    if (have_sim) out += format_double(point.ci_high);
    out += ',';
    if (have_sim) out += format_long(point.bits_simulated);
    out += ',';
    if (have_sim) out += format_long(point.bit_errors);
    out += ',';
    if (i < curve.exact.size() && std::isfinite(curve.exact[i])) {
      out += format_double(curve.exact[i]);
    }
    out += ',';
    if (i < curve.approx.size() && std::isfinite(curve.approx[i])) {
      out += format_double(curve.approx[i]);
    }
    out += '\n';
  }
  return out;
}

int run_experiment(const ExperimentSpec& spec, const std::string& out_path,
                   std::ostream& err, int workers) {
  int status = 0;
  for (const CurveSpec& curve : spec.curves) {
    const std::string name = curve_name(spec, curve);
    BerCurve result;
    try {
      result = run_curve(curve, workers);
    } catch (const std::exception& ex) {
      err << "error: " << name << ": " << ex.what() << "\n";
      status = 1;
      continue;
    }

    if (curve.want_approx) {
      bool any_finite = false;
      for (const double value : result.approx) {
        any_finite = any_finite || std::isfinite(value);
      }
      if (!any_finite) {
        err << "warning: " << name
            << ": approximate overlay unavailable for this configuration; "
               "ber_approx left empty\n";
      }
    }

    for (std::size_t i = 0; i < result.points.size(); ++i) {
      const BerPoint& point = result.points[i];
      if (!result.point_errors[i].empty()) {
        err << "error: " << name << " at " << point.ebn0_db
            << " dB: " << result.point_errors[i] << "\n";
        status = 1;
      } else if (curve.simulate && point.bit_errors < curve.rule.min_errors) {
        err << "error: " << name << " at " << point.ebn0_db
            << " dB: stopped at the bit budget with " << point.bit_errors
            << " errors (target " << curve.rule.min_errors << ")\n";
        status = 1;
      }
    }

    const std::filesystem::path path = curve_path(out_path, curve.label);
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      err << "error: cannot open '" << path.string() << "' for writing\n";
      status = 1;
      continue;
    }
    file << curve_to_csv(result);
    if (!file.good()) {
      err << "error: failed while writing '" << path.string() << "'\n";
      status = 1;
    }
  }
  return status;
}

}  // namespace dcsk

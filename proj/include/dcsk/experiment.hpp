#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dcsk/montecarlo.hpp"

namespace dcsk {

// One curve to produce: a system, its Eb/N0 grid, the stopping rule, which
// closed-form overlays to attach, and whether to simulate at all. Curves
// that only evaluate the closed forms leave the simulation columns empty.
struct CurveSpec {
  std::string label;  // output-file suffix for multi-curve experiments
  SystemConfig config;
  std::vector<double> ebn0_grid;
  StoppingRule rule;
  std::uint64_t seed = 1;
  bool simulate = true;
  bool want_exact = true;
  bool want_approx = false;
};

// A named bundle of curves produced by one invocation.
struct ExperimentSpec {
  std::string name;
  std::vector<CurveSpec> curves;
};

// Parses a flat key=value document (one pair per line, '#' comments) into a
// single-curve experiment. Recognised keys: topology, protocol, users, m_r,
// m_d, d_sd, d_sr, d_rd, m, paths, omegas, delays, two_beta, ebn0_start,
// ebn0_stop, ebn0_step, min_errors, max_bits, seed, overlays. Unknown keys,
// malformed values, and broken invariants raise std::runtime_error with the
// offending line number where one applies.
ExperimentSpec parse_config(const std::string& text);

// Frozen scenario catalog, one entry per published curve family. Changing a
// catalog entry's parameters is a compatibility break; add a new name
// instead.
std::vector<std::string> preset_names();
std::string preset_description(const std::string& name);
ExperimentSpec make_preset(const std::string& name, std::uint64_t seed);

// Closed-form companions for a configuration. The exact overlay covers
// every topology; the approximate one exists only for the direct link and
// for the relay topology under error-free forwarding with matched
// geometry, and is left unset otherwise.
AnalyticOverlays overlays_for(const SystemConfig& config, bool want_exact,
                              bool want_approx);

// Produces the curve: a Monte-Carlo sweep with overlays attached, or an
// overlay-only evaluation when the curve disables simulation.
BerCurve run_curve(const CurveSpec& curve, int workers = 1);

// Renders one curve as CSV: header
// ebn0_db,ber_sim,ci_low,ci_high,bits,errors,ber_exact,ber_approx
// then one row per grid point ordered by ebn0_db ascending, LF endings,
// shortest representations that parse back to the same values. Cells whose
// quantity was not produced (skipped simulation, failed point, absent
// overlay) stay empty.
std::string curve_to_csv(const BerCurve& curve);

// Runs every curve of the experiment and writes one CSV per curve: the
// given path for a single curve, or the path with "-<label>" before the
// extension for families. Warnings and per-point diagnostics go to `err`.
// Returns 0 when every simulated point reached its error target, 1
// otherwise (the CSV is still written in full).
int run_experiment(const ExperimentSpec& spec, const std::string& out_path,
                   std::ostream& err, int workers = 1);

}  // namespace dcsk

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dcsk/system.hpp"

namespace dcsk {

// When to stop accumulating blocks for one estimate: after min_errors bit
// errors, or after max_bits information bits, whichever comes first.
struct StoppingRule {
  long min_errors = 100;
  long max_bits = 100000000;
  double confidence = 0.95;
};

// One estimated operating point. ci_low/ci_high bracket ber_estimate at the
// rule's confidence level. A point that exhausted max_bits without seeing a
// single error carries no rate information beyond its upper limit and is
// flagged as such.
struct BerPoint {
  double ebn0_db = 0.0;
  long bits_simulated = 0;
  long bit_errors = 0;
  double ber_estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool upper_bound_only = false;
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// Wilson score interval for a binomial proportion. Always brackets the plain
// estimate errors / bits, stays inside [0, 1], and keeps a nonzero width at
// zero observed errors.
Interval wilson_interval(long errors, long bits, double confidence);

// Runs independent blocks of the configured system until the rule stops,
// counting every user's information bits. The result is a pure function of
// (config, rule, master_seed): each block draws from counter-derived streams
// keyed by its absolute index, so worker count and scheduling order cannot
// change a single bit of the outcome.
BerPoint estimate_ber(const SystemConfig& config, const StoppingRule& rule,
                      std::uint64_t master_seed, int workers = 1);

// Optional closed-form companions evaluated once per grid point. An absent
// or throwing overlay yields NaN for that entry; it never fails the sweep.
struct AnalyticOverlays {
  std::function<double(double ebn0_db)> exact;
  std::function<double(double ebn0_db)> approx;
};

// A sweep result: one point per grid value plus aligned overlay columns.
// point_errors[i] is empty when point i succeeded; otherwise it holds the
// error message and points[i] is a default-initialized placeholder.
struct BerCurve {
  std::vector<BerPoint> points;
  std::vector<double> exact;
  std::vector<double> approx;
  std::vector<std::string> point_errors;
};

// Estimates the configured system across an Eb/N0 grid. Point i uses a
// sub-seed derived from (master_seed, i), so inserting or removing grid
// values does not disturb the other points. A failing point is recorded and
// skipped rather than aborting the remaining grid.
BerCurve sweep(const SystemConfig& base, const std::vector<double>& ebn0_grid,
               const StoppingRule& rule, std::uint64_t master_seed,
               const AnalyticOverlays& overlays = {}, int workers = 1);

}  // namespace dcsk

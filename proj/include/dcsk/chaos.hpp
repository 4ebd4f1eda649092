#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace dcsk {

enum class ChaosMap { logistic, chebyshev2 };

struct ChaosConfig {
  ChaosMap map = ChaosMap::chebyshev2;
  std::uint64_t seed = 1;
  // Iterates discarded before the first emitted sample.
  int burn_in = 1000;
};

// Chaotic carrier samples together with the per-sample energy they were
// scaled to.
struct ChaoticSequence {
  Eigen::ArrayXd samples;
  double target_energy = 1.0;
};

// Iterates a unit-interval chaotic map and rescales the orbit so the long-run
// per-sample energy equals target_energy. Both maps carry the arcsine
// invariant density (zero mean, raw variance 1/2), so the scale factor is the
// exact sqrt(2 * target_energy) rather than a per-frame estimate; this keeps
// the energy per bit equal to its nominal value in expectation.
class ChaosGenerator {
 public:
  ChaosGenerator(const ChaosConfig& config, double target_energy);

  // Next carrier sample. Throws std::invalid_argument if the orbit has
  // collapsed onto a fixed point of the map (degenerate seed).
  double next();

  // The next n samples as one array.
  Eigen::ArrayXd take(Eigen::Index n);

 private:
  void step();

  ChaosMap map_;
  double state_;
  double scale_;
};

// One-shot generation of `length` samples after the configured burn-in.
ChaoticSequence generate(const ChaosConfig& config, Eigen::Index length,
                         double target_energy);

}  // namespace dcsk

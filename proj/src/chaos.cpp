#include "dcsk/chaos.hpp"

#include <cmath>
#include <stdexcept>

#include "dcsk/rng.hpp"

namespace dcsk {

namespace {

// Deterministic seed-to-state map. The hash spreads nearby seeds across the
// whole interval; seed 0 hashes to 0, which both maps reject as degenerate.
double initial_state(ChaosMap map, std::uint64_t seed) {
  const double u = static_cast<double>(mix64(seed)) * 0x1p-64;  // [0, 1)
  return map == ChaosMap::chebyshev2 ? 2.0 * u - 1.0 : u;
}

double iterate(ChaosMap map, double c) {
  return map == ChaosMap::chebyshev2 ? 1.0 - 2.0 * c * c : 4.0 * c * (1.0 - c);
}

// Centers the state on zero; the Chebyshev orbit already is.
double centered(ChaosMap map, double c) {
  return map == ChaosMap::chebyshev2 ? c : 2.0 * c - 1.0;
}

}  // namespace

ChaosGenerator::ChaosGenerator(const ChaosConfig& config, double target_energy)
    : map_(config.map),
      state_(initial_state(config.map, config.seed)),
      scale_(std::sqrt(2.0 * target_energy)) {
  if (config.burn_in < 0)
    throw std::invalid_argument("ChaosGenerator: burn_in must be >= 0");
  if (!(target_energy > 0.0))
    throw std::invalid_argument("ChaosGenerator: target_energy must be positive");
  for (int i = 0; i < config.burn_in; ++i) step();
}

void ChaosGenerator::step() {
  const double next_state = iterate(map_, state_);
  if (next_state == state_)
    throw std::invalid_argument(
        "ChaosGenerator: seed drives the map onto a fixed point; "
        "choose a different seed");
  state_ = next_state;
}

double ChaosGenerator::next() {
  const double value = scale_ * centered(map_, state_);
  step();
  return value;
}

Eigen::ArrayXd ChaosGenerator::take(Eigen::Index n) {
  Eigen::ArrayXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = next();
  return out;
}

ChaoticSequence generate(const ChaosConfig& config, Eigen::Index length,
                         double target_energy) {
  if (length < 1) throw std::invalid_argument("generate: length must be >= 1");
  ChaosGenerator gen(config, target_energy);
  return {gen.take(length), target_energy};
}

}  // namespace dcsk

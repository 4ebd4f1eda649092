#pragma once

#include <Eigen/Dense>

#include "dcsk/rng.hpp"

namespace dcsk {

// Per-link Nakagami-m multipath description. Every path shares one shape m
// and the per-path average powers sum to one with a uniform Omega_i/m gamma
// scale, which keeps the despread SNR gamma-distributed.
struct FadingProfile {
  double m = 1.0;
  // Per-path average power E[alpha_i^2]; sums to 1.
  Eigen::ArrayXd omegas;
  // Integer sample delays, first 0, strictly increasing.
  Eigen::ArrayXi delays;
};

// Equal-power profile with unit-spaced delays 0..paths-1.
FadingProfile uniform_profile(double m, int paths);

// Throws std::invalid_argument when any profile invariant is broken.
void validate_profile(const FadingProfile& profile);

// One block's constant tap gains; the channel holds still within a block.
struct ChannelRealization {
  Eigen::ArrayXd gains;  // alpha_i >= 0
  Eigen::ArrayXi delays;
};

// Draws alpha_i = sqrt(g_i) with g_i ~ Gamma(shape m, scale Omega_i/m),
// independent per tap.
ChannelRealization draw_realization(const FadingProfile& profile,
                                    RngStream& rng);

// r_j = sqrt(path_loss) * sum_i alpha_i * s_{j - tau_i} + n_j with Gaussian
// noise of variance n0/2 per real sample. Delayed taps are zero-padded at
// the head and truncated at the tail so the output length equals the input
// length. n0 = 0 adds no noise and consumes no randomness.
Eigen::ArrayXd propagate(Eigen::Ref<const Eigen::ArrayXd> signal,
                         const ChannelRealization& realization,
                         double path_loss, double n0, RngStream& rng);

}  // namespace dcsk

#include "dcsk/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace dcsk {

FadingProfile uniform_profile(double m, int paths) {
  if (paths < 1)
    throw std::invalid_argument("uniform_profile: paths must be >= 1");
  FadingProfile p;
  p.m = m;
  p.omegas = Eigen::ArrayXd::Constant(paths, 1.0 / paths);
  p.delays = Eigen::ArrayXi::LinSpaced(paths, 0, paths - 1);
  validate_profile(p);
  return p;
}

void validate_profile(const FadingProfile& profile) {
  if (!(profile.m > 0.0))
    throw std::invalid_argument("FadingProfile: m must be positive");
  const Eigen::Index paths = profile.omegas.size();
  if (paths < 1 || profile.delays.size() != paths)
    throw std::invalid_argument(
        "FadingProfile: omegas and delays must list the same paths (>= 1)");
  if (!(profile.omegas > 0.0).all())
    throw std::invalid_argument("FadingProfile: every omega must be positive");
  if (std::abs(profile.omegas.sum() - 1.0) >= 1e-12)
    throw std::invalid_argument("FadingProfile: omegas must sum to 1");
  // One shape and one scale across paths: the powers must be uniform.
  if ((profile.omegas.maxCoeff() - profile.omegas.minCoeff()) > 1e-12)
    throw std::invalid_argument(
        "FadingProfile: uniform gamma scale requires equal omegas");
  if (profile.delays[0] != 0)
    throw std::invalid_argument("FadingProfile: first delay must be 0");
  for (Eigen::Index i = 1; i < paths; ++i) {
    if (profile.delays[i] <= profile.delays[i - 1])
      throw std::invalid_argument(
          "FadingProfile: delays must be strictly increasing");
  }
}

ChannelRealization draw_realization(const FadingProfile& profile,
                                    RngStream& rng) {
  validate_profile(profile);
  ChannelRealization r;
  r.delays = profile.delays;
  r.gains.resize(profile.omegas.size());
  for (Eigen::Index i = 0; i < profile.omegas.size(); ++i) {
    const double g = rng.gamma(profile.m) * (profile.omegas[i] / profile.m);
    r.gains[i] = std::sqrt(g);
  }
  return r;
}

Eigen::ArrayXd propagate(Eigen::Ref<const Eigen::ArrayXd> signal,
                         const ChannelRealization& realization,
                         double path_loss, double n0, RngStream& rng) {
  if (!(path_loss > 0.0))
    throw std::invalid_argument("propagate: path_loss must be positive");
  if (n0 < 0.0)
    throw std::invalid_argument("propagate: n0 must be non-negative");
  const Eigen::Index n = signal.size();
  const Eigen::Index taps = realization.gains.size();
  if (taps < 1 || realization.delays.size() != taps)
    throw std::invalid_argument("propagate: malformed realization");
  if (realization.delays[taps - 1] > n)
    throw std::invalid_argument("propagate: signal shorter than max delay");
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(n);
  const double amp = std::sqrt(path_loss);
  for (Eigen::Index i = 0; i < taps; ++i) {
    const Eigen::Index tau = realization.delays[i];
    out.tail(n - tau) += (amp * realization.gains[i]) * signal.head(n - tau);
  }
  if (n0 > 0.0) {
    const double sigma = std::sqrt(n0 / 2.0);
    for (Eigen::Index j = 0; j < n; ++j) out[j] += sigma * rng.normal();
  }
  return out;
}

}  // namespace dcsk

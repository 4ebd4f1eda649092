#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dcsk/channel.hpp"
#include "dcsk/chaos.hpp"
#include "dcsk/rng.hpp"

using namespace dcsk;

TEST_CASE("uniform profile layout") {
  const FadingProfile p = uniform_profile(1.5, 3);
  CHECK(p.m == 1.5);
  REQUIRE(p.omegas.size() == 3);
  CHECK((p.omegas == 1.0 / 3.0).all());
  CHECK(p.delays[0] == 0);
  CHECK(p.delays[1] == 1);
  CHECK(p.delays[2] == 2);
}

TEST_CASE("profile invariants are enforced") {
  FadingProfile p = uniform_profile(1.0, 2);
  CHECK_NOTHROW(validate_profile(p));

  FadingProfile bad = p;
  bad.m = 0.0;
  CHECK_THROWS_AS(validate_profile(bad), std::invalid_argument);

  bad = p;
  bad.omegas = Eigen::ArrayXd::Constant(2, 0.6);  // sums to 1.2
  CHECK_THROWS_AS(validate_profile(bad), std::invalid_argument);

  bad = p;
  bad.omegas << 0.7, 0.3;  // sums to 1 but is not uniform
  CHECK_THROWS_AS(validate_profile(bad), std::invalid_argument);

  bad = p;
  bad.delays << 1, 2;  // first delay nonzero
  CHECK_THROWS_AS(validate_profile(bad), std::invalid_argument);

  bad = p;
  bad.delays << 0, 0;  // not strictly increasing
  CHECK_THROWS_AS(validate_profile(bad), std::invalid_argument);

  bad = p;
  bad.delays.resize(1);  // path count mismatch
  bad.delays << 0;
  CHECK_THROWS_AS(validate_profile(bad), std::invalid_argument);

  CHECK_THROWS_AS(uniform_profile(1.0, 0), std::invalid_argument);
}

TEST_CASE("unit-power single tap is Rayleigh for m = 1") {
  const FadingProfile p = uniform_profile(1.0, 1);
  RngStream rng(stream_key(2025, {1}));
  const int draws = 1000000;
  double power = 0.0;
  for (int i = 0; i < draws; ++i) {
    const ChannelRealization r = draw_realization(p, rng);
    REQUIRE(r.gains[0] >= 0.0);
    power += r.gains[0] * r.gains[0];
  }
  CHECK(std::abs(power / draws - 1.0) < 0.01);
}

TEST_CASE("tap powers follow the gamma moments") {
  for (double m : {0.5, 2.0}) {
    const FadingProfile p = uniform_profile(m, 2);
    RngStream rng(stream_key(2025, {2, static_cast<std::uint64_t>(10 * m)}));
    const int draws = 1000000;
    Eigen::ArrayXd g1(draws), g2(draws);
    for (int i = 0; i < draws; ++i) {
      const ChannelRealization r = draw_realization(p, rng);
      REQUIRE(r.gains.size() == 2);
      REQUIRE((r.gains >= 0.0).all());
      g1[i] = r.gains[0] * r.gains[0];
      g2[i] = r.gains[1] * r.gains[1];
    }
    // E[g] = Omega per path; E[g^2]/E[g]^2 = (m+1)/m.
    CHECK(std::abs(g1.mean() / 0.5 - 1.0) < 0.02);
    CHECK(std::abs(g2.mean() / 0.5 - 1.0) < 0.02);
    const double ratio = g1.square().mean() / (g1.mean() * g1.mean());
    CHECK(std::abs(ratio / ((m + 1.0) / m) - 1.0) < 0.02);
  }
}

TEST_CASE("tap draws are independent across blocks") {
  const FadingProfile p = uniform_profile(1.0, 1);
  RngStream rng(stream_key(2025, {3}));
  const int blocks = 100000;
  Eigen::ArrayXd a(blocks);
  for (int i = 0; i < blocks; ++i) a[i] = draw_realization(p, rng).gains[0];
  const Eigen::ArrayXd centered = a - a.mean();
  const double lag1 = (centered.head(blocks - 1) * centered.tail(blocks - 1)).mean();
  CHECK(std::abs(lag1 / centered.square().mean()) < 0.01);
}

TEST_CASE("noiseless single tap at unit gain is the identity") {
  RngStream rng(stream_key(2025, {4}));
  ChaosConfig cfg;
  cfg.seed = 13;
  const Eigen::ArrayXd s = generate(cfg, 64, 1.0).samples;
  ChannelRealization r;
  r.gains = Eigen::ArrayXd::Constant(1, 1.0);
  r.delays = Eigen::ArrayXi::Zero(1);
  const Eigen::ArrayXd out = propagate(s, r, 1.0, 0.0, rng);
  CHECK((out == s).all());
}

TEST_CASE("two-tap convolution by hand") {
  RngStream rng(stream_key(2025, {5}));
  Eigen::ArrayXd s(3);
  s << 1.0, 0.0, 0.0;
  ChannelRealization r;
  r.gains = Eigen::ArrayXd::Constant(2, 1.0);
  r.delays.resize(2);
  r.delays << 0, 1;
  const Eigen::ArrayXd out = propagate(s, r, 1.0, 0.0, rng);
  REQUIRE(out.size() == 3);
  CHECK(out[0] == 1.0);
  CHECK(out[1] == 1.0);
  CHECK(out[2] == 0.0);
  // Path loss scales amplitudes by sqrt(1/d^2).
  const Eigen::ArrayXd scaled = propagate(s, r, 0.25, 0.0, rng);
  CHECK(scaled[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("noise variance calibration") {
  RngStream rng(stream_key(2025, {6}));
  const Eigen::ArrayXd silent = Eigen::ArrayXd::Zero(1000000);
  ChannelRealization r;
  r.gains = Eigen::ArrayXd::Constant(1, 1.0);
  r.delays = Eigen::ArrayXi::Zero(1);
  const double n0 = 3.7;
  const Eigen::ArrayXd out = propagate(silent, r, 1.0, n0, rng);
  CHECK(std::abs(out.mean()) < 0.01);
  CHECK(std::abs(out.square().mean() / (n0 / 2.0) - 1.0) < 0.01);
}

TEST_CASE("fading conserves signal energy in expectation") {
  // Interleaved zeros keep the two delayed taps from overlapping, so the
  // expected output energy is exactly (omega_1 + omega_2) * ||s||^2.
  ChaosConfig cfg;
  cfg.seed = 21;
  const Eigen::ArrayXd half = generate(cfg, 128, 1.0).samples;
  Eigen::ArrayXd s = Eigen::ArrayXd::Zero(256);
  for (Eigen::Index i = 0; i < 128; ++i) s[2 * i] = half[i];
  const double energy = s.square().sum();

  const FadingProfile p = uniform_profile(1.0, 2);
  RngStream rng(stream_key(2025, {7}));
  double total = 0.0;
  const int blocks = 10000;
  for (int i = 0; i < blocks; ++i) {
    const ChannelRealization r = draw_realization(p, rng);
    total += propagate(s, r, 1.0, 0.0, rng).square().sum();
  }
  CHECK(std::abs(total / blocks / energy - 1.0) < 0.02);
}

TEST_CASE("propagation rejects bad arguments") {
  RngStream rng(stream_key(2025, {8}));
  Eigen::ArrayXd s(2);
  s << 1.0, -1.0;
  ChannelRealization r;
  r.gains = Eigen::ArrayXd::Constant(2, 1.0);
  r.delays.resize(2);
  r.delays << 0, 3;
  CHECK_THROWS_AS(propagate(s, r, 1.0, 0.0, rng), std::invalid_argument);
  r.delays << 0, 1;
  CHECK_THROWS_AS(propagate(s, r, 0.0, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(propagate(s, r, 1.0, -1.0, rng), std::invalid_argument);
}

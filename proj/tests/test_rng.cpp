#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dcsk/rng.hpp"

using namespace dcsk;

TEST_CASE("philox4x32-10 known-answer vectors") {
  // Reference vectors from the Random123 distribution.
  auto r0 = philox4x32({0, 0, 0, 0}, 0, 0);
  CHECK(r0[0] == 0x6627e8d5u);
  CHECK(r0[1] == 0xe169c58du);
  CHECK(r0[2] == 0xbc57ac4cu);
  CHECK(r0[3] == 0x9b00dbd8u);

  auto r1 = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                       0xffffffffu, 0xffffffffu);
  CHECK(r1[0] == 0x408f276du);
  CHECK(r1[1] == 0x41c83b0eu);
  CHECK(r1[2] == 0xa20bc7c6u);
  CHECK(r1[3] == 0x6d5451fdu);

  auto r2 = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                       0xa4093822u, 0x299f31d0u);
  CHECK(r2[0] == 0xd16cfe09u);
  CHECK(r2[1] == 0x94fdccebu);
  CHECK(r2[2] == 0x5001e420u);
  CHECK(r2[3] == 0x24126ea1u);
}

TEST_CASE("streams are deterministic and key-sensitive") {
  RngStream a(stream_key(42, {1, 2}));
  RngStream b(stream_key(42, {1, 2}));
  RngStream c(stream_key(42, {1, 3}));
  bool all_equal = true;
  bool any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next_u64();
    if (va != b.next_u64()) all_equal = false;
    if (va != c.next_u64()) any_diff = true;
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("uniform moments") {
  RngStream s(stream_key(7, {0}));
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sq += u * u;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean - 0.5) < 0.005);
  CHECK(std::abs(var - 1.0 / 12.0) < 0.002);
}

TEST_CASE("normal moments") {
  RngStream s(stream_key(11, {0}));
  const int n = 200000;
  double sum = 0.0, sq = 0.0, quad = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = s.normal();
    sum += x;
    sq += x * x;
    quad += x * x * x * x;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.02);
  CHECK(std::abs(quad / n - 3.0) < 0.1);
}

TEST_CASE("gamma sampler moments across shapes") {
  for (double shape : {0.5, 1.0, 2.0, 4.5}) {
    RngStream s(stream_key(13, {static_cast<std::uint64_t>(shape * 10)}));
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double g = s.gamma(shape);
      CHECK(g > 0.0);
      sum += g;
      sq += g * g;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean - shape) < 0.03 * shape + 0.01);
    CHECK(std::abs(var - shape) < 0.05 * shape + 0.02);
  }
}

TEST_CASE("gamma rejects nonpositive shape") {
  RngStream s(1);
  CHECK_THROWS_AS(s.gamma(0.0), std::invalid_argument);
  CHECK_THROWS_AS(s.gamma(-1.0), std::invalid_argument);
}

#pragma once

#include <array>
#include <cstdint>

namespace dcsk {

// Philox4x32-10 counter-based generator. A stream is identified by a 64-bit
// key; the 128-bit counter advances per 4-word draw, so any number of streams
// can be consumed independently regardless of scheduling.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        std::uint32_t key0, std::uint32_t key1);

// SplitMix64 finalizer, used to hash ids into stream keys.
std::uint64_t mix64(std::uint64_t z);

// Fold a master seed and a list of ids into a stream key.
std::uint64_t stream_key(std::uint64_t master, std::initializer_list<std::uint64_t> ids);

class RngStream {
 public:
  explicit RngStream(std::uint64_t key);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53-bit resolution.
  double uniform();
  // Uniform on (0, 1), never exactly 0 or 1.
  double uniform_open();
  // Standard normal via Box-Muller (pairs cached).
  double normal();
  // Gamma(shape, scale 1), Marsaglia-Tsang. Valid for any shape > 0.
  double gamma(double shape);

 private:
  void refill();

  std::uint32_t key0_, key1_;
  std::array<std::uint32_t, 4> counter_{};
  std::array<std::uint32_t, 4> buf_{};
  int buf_pos_;
  double cached_normal_;
  bool has_cached_normal_;
};

}  // namespace dcsk

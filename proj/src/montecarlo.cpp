#include "dcsk/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

#include "dcsk/rng.hpp"
#include "dcsk/special.hpp"

namespace dcsk {

namespace {

// Blocks are processed in waves of fixed-size chunks. A wave is the unit at
// which the stopping rule is consulted, so the set of simulated blocks —
// and therefore the estimate — depends only on the counts, never on how the
// chunks were spread across workers.
constexpr long kChunkBlocks = 64;
constexpr long kChunksPerWave = 8;

struct Tally {
  long errors = 0;
  long bits = 0;
};

// Stream roles hung off a block's key: one stream decides the transmitted
// bits, a second drives everything physical (carrier, fading, noise).
constexpr std::uint64_t kDataRole = 0;
constexpr std::uint64_t kPhysicsRole = 1;

Tally run_blocks(const SystemConfig& config, std::uint64_t master_seed,
                 long first_block, long count) {
  Tally tally;
  const bool cooperative = config.topology == Topology::CC;
  std::vector<int> tx(static_cast<std::size_t>(config.users));
  for (long b = first_block; b < first_block + count; ++b) {
    const auto block = static_cast<std::uint64_t>(b);
    RngStream data(stream_key(master_seed, {block, kDataRole}));
    for (int& bit : tx) bit = static_cast<int>(data.next_u32() >> 31);
    RngStream physics(stream_key(master_seed, {block, kPhysicsRole}));
    const std::vector<int> rx = cooperative
                                    ? run_cc_block(config, tx, physics)
                                    : run_block(config, tx, physics);
    for (std::size_t u = 0; u < tx.size(); ++u) {
      tally.errors += rx[u] != tx[u];
      ++tally.bits;
    }
  }
  return tally;
}

// Runs one wave of `wave_blocks` blocks starting at `first_block`, spread
// over `workers` threads by static chunk assignment. Integer tallies add
// associatively, so the merge order is irrelevant.
Tally run_wave(const SystemConfig& config, std::uint64_t master_seed,
               long first_block, long wave_blocks, int workers) {
  const long chunks = (wave_blocks + kChunkBlocks - 1) / kChunkBlocks;
  const int threads =
      static_cast<int>(std::min<long>(workers, chunks));
  if (threads <= 1) {
    return run_blocks(config, master_seed, first_block, wave_blocks);
  }
  std::vector<Tally> partial(static_cast<std::size_t>(threads));
  std::vector<std::exception_ptr> failure(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        Tally local;
        for (long c = t; c < chunks; c += threads) {
          const long begin = first_block + c * kChunkBlocks;
          const long len =
              std::min(kChunkBlocks, first_block + wave_blocks - begin);
          const Tally piece = run_blocks(config, master_seed, begin, len);
          local.errors += piece.errors;
          local.bits += piece.bits;
        }
        partial[static_cast<std::size_t>(t)] = local;
      } catch (...) {
        failure[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (std::thread& worker : pool) worker.join();
  for (const std::exception_ptr& ex : failure) {
    if (ex) std::rethrow_exception(ex);
  }
  Tally total;
  for (const Tally& piece : partial) {
    total.errors += piece.errors;
    total.bits += piece.bits;
  }
  return total;
}

void validate_rule(const StoppingRule& rule, const SystemConfig& config) {
  if (rule.min_errors < 1) {
    throw std::invalid_argument(
        "estimate_ber: min_errors must be at least one");
  }
  if (rule.max_bits < config.two_beta) {
    throw std::invalid_argument(
        "estimate_ber: max_bits must cover at least one spreading frame");
  }
  if (!(rule.confidence > 0.0 && rule.confidence < 1.0)) {
    throw std::invalid_argument(
        "estimate_ber: confidence must lie strictly between 0 and 1");
  }
}

}  // namespace

Interval wilson_interval(long errors, long bits, double confidence) {
  if (bits < 1) {
    throw std::invalid_argument("wilson_interval: bits must be positive");
  }
  if (errors < 0 || errors > bits) {
    throw std::invalid_argument(
        "wilson_interval: errors must lie between 0 and bits");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument(
        "wilson_interval: confidence must lie strictly between 0 and 1");
  }
  const double z = inverse_normal_cdf(0.5 + 0.5 * confidence);
  const double n = static_cast<double>(bits);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  // At the boundary counts the closed form touches 0 or 1 exactly; snap
  // there so no rounding residue can push the interval off the estimate.
  const double low = errors == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = errors == bits ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

BerPoint estimate_ber(const SystemConfig& config, const StoppingRule& rule,
                      std::uint64_t master_seed, int workers) {
  validate_config(config);
  validate_rule(rule, config);
  if (workers < 1) {
    throw std::invalid_argument("estimate_ber: workers must be at least one");
  }

  long errors = 0;
  long bits = 0;
  long next_block = 0;
  while (errors < rule.min_errors && bits < rule.max_bits) {
    const long wanted_bits = rule.max_bits - bits;
    const long wanted_blocks =
        (wanted_bits + config.users - 1) / config.users;
    const long wave_blocks =
        std::min(kChunkBlocks * kChunksPerWave, wanted_blocks);
    const Tally wave =
        run_wave(config, master_seed, next_block, wave_blocks, workers);
    errors += wave.errors;
    bits += wave.bits;
    next_block += wave_blocks;
  }

  BerPoint point;
  point.ebn0_db = config.ebn0_db;
  point.bits_simulated = bits;
  point.bit_errors = errors;
  point.ber_estimate = static_cast<double>(errors) / static_cast<double>(bits);
  const Interval ci = wilson_interval(errors, bits, rule.confidence);
  point.ci_low = ci.low;
  point.ci_high = ci.high;
  point.upper_bound_only = errors == 0;
  return point;
}

BerCurve sweep(const SystemConfig& base, const std::vector<double>& ebn0_grid,
               const StoppingRule& rule, std::uint64_t master_seed,
               const AnalyticOverlays& overlays, int workers) {
  if (ebn0_grid.empty()) {
    throw std::invalid_argument("sweep: the Eb/N0 grid must not be empty");
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  BerCurve curve;
  curve.points.reserve(ebn0_grid.size());
  for (std::size_t i = 0; i < ebn0_grid.size(); ++i) {
    SystemConfig config = base;
    config.ebn0_db = ebn0_grid[i];
    BerPoint point;
    std::string error;
    try {
      point = estimate_ber(config, rule,
                           stream_key(master_seed, {i}), workers);
    } catch (const std::exception& ex) {
      point.ebn0_db = ebn0_grid[i];
      error = ex.what();
    }
    curve.points.push_back(point);
    curve.point_errors.push_back(error);
    double exact_value = nan;
    double approx_value = nan;
    if (overlays.exact) {
      try {
        exact_value = overlays.exact(ebn0_grid[i]);
      } catch (const std::exception&) {
      }
    }
    if (overlays.approx) {
      try {
        approx_value = overlays.approx(ebn0_grid[i]);
      } catch (const std::exception&) {
      }
    }
    curve.exact.push_back(exact_value);
    curve.approx.push_back(approx_value);
  }
  return curve;
}

}  // namespace dcsk

#include "dcsk/system.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "dcsk/chaos.hpp"
#include "dcsk/modem.hpp"
#include "dcsk/spreading.hpp"

namespace dcsk {
namespace {

// Hashed seeds start the orbit uniformly on (-1, 1); the Chebyshev map mixes
// toward the arcsine invariant density geometrically fast, so a short settle
// suffices inside the inner simulation loop.
constexpr int kCarrierBurnIn = 64;

// In double precision the Chebyshev orbit occasionally rounds onto an exact
// fixed point (|c| within one ulp of 1 makes c*c round to 1), at roughly
// 1e-8 per step, and the generator throws. The block is then re-run with the
// stream's next carrier seed; the cap only guards against a systematic
// defect, since honest collisions never repeat back to back.
constexpr int kMaxCarrierRetries = 8;

// All link energies are expressed as fractions of one bit's energy.
constexpr double kBitEnergy = 1.0;

double noise_sigma(double ebn0_db) {
  const double n0 = kBitEnergy * std::pow(10.0, -ebn0_db / 10.0);
  return std::sqrt(0.5 * n0);
}

// Amplitude that puts `link_energy` into one composed symbol in expectation;
// the chaotic segment energy keeps its natural per-block fluctuation.
double symbol_amplitude(double link_energy, int order, Eigen::Index f) {
  return std::sqrt(link_energy /
                   (static_cast<double>(order) * static_cast<double>(f)));
}

// The transmitter holds every bit's energy at its nominal value, matching
// the constant-bit-energy assumption of the closed-form model: the chaotic
// segment is rescaled to exact unit per-sample energy before composition.
// Without this, the natural per-segment energy spread (about 1/sqrt(8f)
// relative) inflates the error rate through the convexity of the conditional
// BER, increasingly so at high SNR.
Eigen::ArrayXd unit_energy_segment(ChaosGenerator& carrier, Eigen::Index f) {
  Eigen::ArrayXd segment = carrier.take(f);
  const double energy = (segment * segment).sum();
  return segment * std::sqrt(static_cast<double>(f) / energy);
}

void add_noise(Eigen::ArrayXd& signal, double sigma, RngStream& rng) {
  for (Eigen::Index t = 0; t < signal.size(); ++t) {
    signal[t] += sigma * rng.normal();
  }
}

// Superposes every transmitted symbol at one receive antenna, each over a
// fresh independent fading draw, noiselessly; the caller scales the sum and
// adds receiver noise once.
Eigen::ArrayXd receive_superposed(const std::vector<Eigen::ArrayXd>& symbols,
                                  const FadingProfile& fading,
                                  double path_loss, RngStream& rng) {
  Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(symbols.front().size());
  for (const Eigen::ArrayXd& symbol : symbols) {
    const ChannelRealization link = draw_realization(fading, rng);
    sum += propagate(symbol, link, path_loss, 0.0, rng);
  }
  return sum;
}

int sign_bit(double value) { return value > 0.0 ? 1 : 0; }

void check_bits(const SystemConfig& config, const std::vector<int>& bits) {
  if (static_cast<int>(bits.size()) != config.users) {
    throw std::invalid_argument("run_block: need exactly one bit per user");
  }
  for (int bit : bits) {
    if (bit != 0 && bit != 1) {
      throw std::invalid_argument("run_block: bits must be 0 or 1");
    }
  }
}

double combined_statistic(double slot1, double slot2, bool has_slot2) {
  if (!has_slot2) return slot1;
  return (slot1 + slot2) / std::sqrt(2.0);
}

std::vector<int> run_block_attempt(const SystemConfig& config,
                                   const std::vector<int>& true_bits,
                                   std::uint64_t carrier_seed, RngStream& rng,
                                   SlotTranscript* transcript) {
  const int n = config.users;
  const int order = 2 * n;
  const Eigen::Index f = segment_length(config);
  const Eigen::MatrixXd W = walsh(order);
  const double sigma = noise_sigma(config.ebn0_db);
  const bool cooperative = config.topology == Topology::CD;

  ChaosGenerator carrier({ChaosMap::chebyshev2, carrier_seed, kCarrierBurnIn},
                         1.0);

  std::vector<Eigen::ArrayXd> symbols(n);
  for (int u = 0; u < n; ++u) {
    symbols[u] = compose_user_signal(u + 1, true_bits[u],
                                     unit_energy_segment(carrier, f), W);
  }

  // Slot 1 at the destination. The budget splits one bit's energy evenly
  // over the two slots, shares the medium among the users, and normalizes
  // away receive-array gain, so each antenna's link carries
  // E_b / (2 * users * dest_antennas) per bit.
  const double amp_sd =
      symbol_amplitude(kBitEnergy / (2.0 * n * config.dest_antennas), order, f);
  const double pl_sd = 1.0 / (config.d_sd * config.d_sd);
  std::vector<Eigen::ArrayXd> dest1(config.dest_antennas);
  for (int j = 0; j < config.dest_antennas; ++j) {
    dest1[j] = amp_sd * receive_superposed(symbols, config.fading, pl_sd, rng);
    add_noise(dest1[j], sigma, rng);
  }

  // Slot 1 at the relay, only when its reception matters: the error-free
  // protocol re-modulates the true bits without listening.
  bool idle = false;
  std::vector<int> forwarded = true_bits;
  std::vector<Eigen::ArrayXd> relay_rx;
  if (cooperative && config.protocol == Protocol::DF) {
    const double amp_sr = symbol_amplitude(
        kBitEnergy / (2.0 * n * config.relay_antennas), order, f);
    const double pl_sr = 1.0 / (config.d_sr * config.d_sr);
    relay_rx.resize(config.relay_antennas);
    for (int k = 0; k < config.relay_antennas; ++k) {
      relay_rx[k] =
          amp_sr * receive_superposed(symbols, config.fading, pl_sr, rng);
      add_noise(relay_rx[k], sigma, rng);
    }
    for (int u = 0; u < n; ++u) {
      double stat = 0.0;
      for (const Eigen::ArrayXd& rx : relay_rx) {
        stat += gml_detect(rx, u + 1, W, f).value;
      }
      forwarded[u] = sign_bit(stat);
      if (forwarded[u] != true_bits[u]) idle = true;
    }
    if (config.force_relay_idle) idle = true;
  }

  // Slot 2: every relay antenna re-modulates the whole block on its own
  // fresh carrier segments, so the per-pair contributions add in power at
  // the destination instead of coherently in amplitude.
  std::vector<Eigen::ArrayXd> dest2;
  if (cooperative && !idle) {
    const double amp_rd = symbol_amplitude(
        kBitEnergy / (2.0 * n * config.relay_antennas * config.dest_antennas),
        order, f);
    const double pl_rd = 1.0 / (config.d_rd * config.d_rd);
    std::vector<Eigen::ArrayXd> relayed(config.relay_antennas);
    for (int k = 0; k < config.relay_antennas; ++k) {
      Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(config.two_beta);
      for (int u = 0; u < n; ++u) {
        sum += compose_user_signal(u + 1, forwarded[u],
                                   unit_energy_segment(carrier, f), W);
      }
      relayed[k] = std::move(sum);
    }
    dest2.resize(config.dest_antennas);
    for (int j = 0; j < config.dest_antennas; ++j) {
      dest2[j] =
          amp_rd * receive_superposed(relayed, config.fading, pl_rd, rng);
      add_noise(dest2[j], sigma, rng);
    }
  }

  std::vector<int> decisions(n);
  for (int u = 0; u < n; ++u) {
    double slot1 = 0.0;
    for (const Eigen::ArrayXd& rx : dest1) {
      slot1 += gml_detect(rx, u + 1, W, f).value;
    }
    double slot2 = 0.0;
    for (const Eigen::ArrayXd& rx : dest2) {
      slot2 += gml_detect(rx, u + 1, W, f).value;
    }
    decisions[u] = sign_bit(combined_statistic(slot1, slot2, !dest2.empty()));
  }

  if (transcript) {
    *transcript = SlotTranscript{};
    transcript->relay_rx = std::move(relay_rx);
    transcript->dest_rx_slot1 = std::move(dest1);
    transcript->dest_rx_slot2 = std::move(dest2);
    if (cooperative) transcript->relay_decisions = std::move(forwarded);
    transcript->relay_idled = idle;
  }
  return decisions;
}

std::vector<int> run_cc_block_attempt(const SystemConfig& config,
                                      const std::vector<int>& true_bits,
                                      std::uint64_t carrier_seed,
                                      RngStream& rng,
                                      SlotTranscript* transcript) {
  const int n = config.users;  // == 2
  const int order = 2 * n;
  const Eigen::Index f = segment_length(config);
  const Eigen::MatrixXd W = walsh(order);
  const double sigma = noise_sigma(config.ebn0_db);
  const double amp = symbol_amplitude(kBitEnergy / (2.0 * n), order, f);
  const double pl_sd = 1.0 / (config.d_sd * config.d_sd);
  const double pl_uu = 1.0 / (config.d_sr * config.d_sr);

  ChaosGenerator carrier({ChaosMap::chebyshev2, carrier_seed, kCarrierBurnIn},
                         1.0);

  std::vector<Eigen::ArrayXd> symbols(n);
  for (int u = 0; u < n; ++u) {
    symbols[u] = compose_user_signal(u + 1, true_bits[u],
                                     unit_energy_segment(carrier, f), W);
  }

  Eigen::ArrayXd dest1 =
      amp * receive_superposed(symbols, config.fading, pl_sd, rng);
  add_noise(dest1, sigma, rng);

  // Each user hears only its partner over the inter-user link; its own
  // transmission is known and removed before detection.
  std::vector<Eigen::ArrayXd> partner_rx(n);
  for (int u = 0; u < n; ++u) {
    const ChannelRealization link = draw_realization(config.fading, rng);
    partner_rx[u] = amp * propagate(symbols[1 - u], link, pl_uu, 0.0, rng);
    add_noise(partner_rx[u], sigma, rng);
  }

  // decoded[u] is user u's bit as recovered by the partner who would
  // forward it.
  std::vector<int> decoded(n);
  for (int u = 0; u < n; ++u) {
    decoded[1 - u] = sign_bit(gml_detect(partner_rx[u], 2 - u, W, f).value);
  }
  bool idle = config.force_relay_idle;
  for (int u = 0; u < n; ++u) {
    if (decoded[u] != true_bits[u]) idle = true;
  }

  Eigen::ArrayXd dest2;
  bool has_slot2 = false;
  if (!idle) {
    std::vector<Eigen::ArrayXd> forwards(n);
    for (int u = 0; u < n; ++u) {
      // User u re-modulates the partner's bit under the partner's code.
      const int partner = 1 - u;
      forwards[u] = compose_user_signal(partner + 1, decoded[partner],
                                        unit_energy_segment(carrier, f), W);
    }
    dest2 = amp * receive_superposed(forwards, config.fading, pl_sd, rng);
    add_noise(dest2, sigma, rng);
    has_slot2 = true;
  }

  std::vector<int> decisions(n);
  for (int u = 0; u < n; ++u) {
    const double slot1 = gml_detect(dest1, u + 1, W, f).value;
    const double slot2 = has_slot2 ? gml_detect(dest2, u + 1, W, f).value : 0.0;
    decisions[u] = sign_bit(combined_statistic(slot1, slot2, has_slot2));
  }

  if (transcript) {
    *transcript = SlotTranscript{};
    transcript->partner_rx = std::move(partner_rx);
    transcript->dest_rx_slot1.push_back(std::move(dest1));
    if (has_slot2) transcript->dest_rx_slot2.push_back(std::move(dest2));
    transcript->relay_decisions = std::move(decoded);
    transcript->relay_idled = idle;
  }
  return decisions;
}

// Runs one validated block, drawing a fresh carrier seed per attempt so a
// collapsed orbit never stalls the stream.
template <typename Attempt>
std::vector<int> with_carrier_retry(RngStream& rng, Attempt&& attempt) {
  for (int tries = 0;; ++tries) {
    const std::uint64_t carrier_seed = rng.next_u64();
    try {
      return attempt(carrier_seed);
    } catch (const std::invalid_argument&) {
      if (tries + 1 >= kMaxCarrierRetries) throw;
    }
  }
}

}  // namespace

Eigen::Index segment_length(const SystemConfig& config) {
  return static_cast<Eigen::Index>(config.two_beta) / (2 * config.users);
}

void validate_config(const SystemConfig& config) {
  if (config.users < 1) {
    throw std::invalid_argument("system: users must be at least 1");
  }
  if (!(config.d_sd > 0.0)) {
    throw std::invalid_argument("system: d_sd must be positive");
  }
  if (!std::isfinite(config.ebn0_db)) {
    throw std::invalid_argument("system: ebn0_db must be finite");
  }
  const int order = 2 * config.users;
  if (config.two_beta < 2 * order || config.two_beta % (2 * order) != 0) {
    throw std::invalid_argument(
        "system: two_beta must be a positive multiple of 2*(2*users)");
  }
  validate_profile(config.fading);
  const Eigen::Index f = segment_length(config);
  if (config.fading.delays.maxCoeff() >= f) {
    throw std::invalid_argument(
        "system: path delays must stay below the Walsh segment length");
  }
  if (config.dest_antennas < 1) {
    throw std::invalid_argument("system: dest_antennas must be at least 1");
  }
  switch (config.topology) {
    case Topology::NC:
      break;  // relay fields are ignored
    case Topology::CD:
      if (config.relay_antennas < 1) {
        throw std::invalid_argument(
            "system: relay_antennas must be at least 1");
      }
      if (!(config.d_sr > 0.0) || !(config.d_rd > 0.0)) {
        throw std::invalid_argument("system: relay distances must be positive");
      }
      break;
    case Topology::CC:
      if (config.users != 2) {
        throw std::invalid_argument("system: CC is a two-user topology");
      }
      if (config.relay_antennas != 1 || config.dest_antennas != 1) {
        throw std::invalid_argument(
            "system: CC terminals carry one antenna each");
      }
      if (!(config.d_sr > 0.0)) {
        throw std::invalid_argument(
            "system: CC inter-user distance must be positive");
      }
      break;
  }
}

std::vector<int> run_block(const SystemConfig& config,
                           const std::vector<int>& true_bits, RngStream& rng,
                           SlotTranscript* transcript) {
  validate_config(config);
  if (config.topology == Topology::CC) {
    throw std::invalid_argument("run_block: CC blocks go through run_cc_block");
  }
  check_bits(config, true_bits);
  return with_carrier_retry(rng, [&](std::uint64_t carrier_seed) {
    return run_block_attempt(config, true_bits, carrier_seed, rng, transcript);
  });
}

std::vector<int> run_cc_block(const SystemConfig& config,
                              const std::vector<int>& true_bits,
                              RngStream& rng, SlotTranscript* transcript) {
  validate_config(config);
  if (config.topology != Topology::CC) {
    throw std::invalid_argument("run_cc_block: topology must be CC");
  }
  check_bits(config, true_bits);
  return with_carrier_retry(rng, [&](std::uint64_t carrier_seed) {
    return run_cc_block_attempt(config, true_bits, carrier_seed, rng,
                                transcript);
  });
}

EnergyAudit energy_audit(const SystemConfig& config) {
  validate_config(config);
  EnergyAudit audit;
  switch (config.topology) {
    case Topology::NC:
      audit.slot1_per_user = kBitEnergy;
      break;
    case Topology::CC:
      audit.slot1_per_user = 0.5 * kBitEnergy;
      audit.slot2_total_per_user = 0.5 * kBitEnergy;
      audit.slot2_per_pair = 0.5 * kBitEnergy;
      break;
    case Topology::CD:
      audit.slot1_per_user = 0.5 * kBitEnergy;
      audit.slot2_total_per_user = 0.5 * kBitEnergy;
      audit.slot2_per_pair =
          0.5 * kBitEnergy /
          (static_cast<double>(config.relay_antennas) * config.dest_antennas);
      break;
  }
  audit.total = audit.slot1_per_user + audit.slot2_total_per_user;
  return audit;
}

}  // namespace dcsk

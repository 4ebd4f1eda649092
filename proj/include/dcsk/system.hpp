#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dcsk/channel.hpp"
#include "dcsk/rng.hpp"

namespace dcsk {

enum class Topology { NC, CC, CD };
enum class Protocol { EF, DF };

// One multi-access block: every user contributes one bit per block, carried
// by a 2*beta Walsh-composed symbol per time slot.
struct SystemConfig {
  Topology topology = Topology::CD;
  Protocol protocol = Protocol::EF;
  int users = 2;
  int relay_antennas = 1;
  int dest_antennas = 1;
  double d_sd = 1.0;
  // For CC this is the inter-user distance; the forwarding hop then spans
  // d_sd because the partner transmits from the user position.
  double d_sr = 1.0;
  double d_rd = 1.0;
  FadingProfile fading;
  int two_beta = 128;
  double ebn0_db = 10.0;
  // Diagnostic hook: treat every relay (or partner) block as failed so
  // decode-and-forward idles unconditionally. Ignored by the error-free
  // protocol.
  bool force_relay_idle = false;
};

// Walsh segment length per chip, 2*beta / (2 * users).
Eigen::Index segment_length(const SystemConfig& config);

// Throws std::invalid_argument on any broken invariant; run_block calls this
// before drawing from the stream.
void validate_config(const SystemConfig& config);

// Everything observable about one block, for diagnosis and protocol
// assertions. Waveform entries are only present for links the topology and
// protocol actually exercise.
struct SlotTranscript {
  std::vector<Eigen::ArrayXd> relay_rx;       // slot 1, per relay antenna
  std::vector<Eigen::ArrayXd> partner_rx;     // slot 1, per user (CC)
  std::vector<Eigen::ArrayXd> dest_rx_slot1;  // per destination antenna
  std::vector<Eigen::ArrayXd> dest_rx_slot2;  // empty for NC or idle blocks
  std::vector<int> relay_decisions;           // per user; what slot 2 carries
  bool relay_idled = false;
};

// Runs one block of the configured topology and returns the destination's
// per-user bit decisions. Deterministic given the stream state.
//
// Slot 1: all users broadcast their Walsh-composed DCSK symbols, which
// superpose on every receive antenna over independent Nakagami links. Slot 2
// (CD): the relay re-modulates with fresh chaotic references per transmit
// antenna — true bits under EF, decoded bits under DF, and only when the
// whole block decoded correctly, else it idles. The destination sums GML
// statistics across its antennas unweighted and combines the two slots as
// (slot1 + slot2)/sqrt(2); on idle blocks it falls back to slot 1 alone.
std::vector<int> run_block(const SystemConfig& config,
                           const std::vector<int>& true_bits, RngStream& rng,
                           SlotTranscript* transcript = nullptr);

// Two-user cooperation without a dedicated relay: in slot 1 each user also
// decodes its partner over the inter-user link; in slot 2 both forward the
// partner's bit from the user position, but only when the whole exchange
// decoded correctly, else the pair idles and the destination keeps slot 1.
std::vector<int> run_cc_block(const SystemConfig& config,
                              const std::vector<int>& true_bits,
                              RngStream& rng,
                              SlotTranscript* transcript = nullptr);

// Notional energy split of one user's bit across slots and links, in units
// of E_b. Totals are exact by construction.
struct EnergyAudit {
  double slot1_per_user = 0.0;
  double slot2_total_per_user = 0.0;
  double slot2_per_pair = 0.0;  // per relay-to-destination antenna pair
  double total = 0.0;
};

EnergyAudit energy_audit(const SystemConfig& config);

}  // namespace dcsk

#pragma once

#include <functional>
#include <vector>

namespace dcsk {

struct GammaDist {
  double shape = 1.0;
  double scale = 1.0;
};

// E[exp(t X)] for X ~ Gamma(shape, scale); requires t * scale < 1.
double gamma_mgf(const GammaDist& g, double t);

// Distribution of a sum of independent Gamma variates with a common shape
// family but arbitrary scales, represented as a single-scale Gamma mixture.
// With equal scales the sum collapses to one Gamma component.
class GammaSum {
 public:
  explicit GammaSum(std::vector<GammaDist> parts);

  double shape_total() const { return rho_; }
  double base_scale() const { return b0_; }
  double mean() const { return mean_; }
  double variance() const { return var_; }
  const std::vector<double>& weights() const { return weights_; }

  double pdf(double x) const;

  // Chernoff bound on log P(X > x).
  double log_sf_bound(double x) const;

  // E[f(X)] to absolute tolerance abs_tol; requires |f| <= 1.
  double expectation(const std::function<double(double)>& f,
                     double abs_tol = 1e-10) const;

 private:
  std::vector<GammaDist> parts_;
  std::vector<double> weights_;   // mixture weights over shapes rho_ + i
  double rho_ = 0.0;
  double b0_ = 0.0;
  double mean_ = 0.0;
  double var_ = 0.0;
  bool single_ = false;
};

// Bit error probability of the differential correlation receiver at
// instantaneous SNR `snr`, with `corr_len` chip products in the correlator.
double conditional_ber(double snr, double corr_len);

// Fading-averaged bit error probability.
double exact_ber(const GammaDist& snr_dist, double corr_len,
                 double abs_tol = 1e-10);
double exact_ber(const GammaSum& snr_dist, double corr_len,
                 double abs_tol = 1e-10);

// Point-to-point link over Nakagami-m multipath with `paths` equal-power
// branches at transmit SNR ebn0_db (dB).
double exact_ber_nc(double ebn0_db, double m, int paths, double corr_len);

// Equivalent SNR distributions of the three links in the relay topology,
// together with the geometry counts needed to track how many correlator
// branches each receiver combines.
struct LinkBudget {
  GammaDist sd;  // source -> destination
  GammaDist rd;  // relay -> destination
  GammaDist sr;  // source -> relay
  int users = 1;
  int relay_antennas = 1;
  int dest_antennas = 1;
};

LinkBudget make_link_budget(double ebn0_db, double m, int paths, int users,
                            int relay_antennas, int dest_antennas, double d_sd,
                            double d_sr, double d_rd);

// Relay topology with an always-correct relay: the destination equal-gain
// combines the direct branch and the relayed branch.  Every branch correlator
// contributes its own noise-times-noise variance, so combining B statistics
// raises the effective correlator length to B * corr_len; the destination
// sums dest_antennas correlators per slot over two slots.
double exact_ber_cd_ef(const LinkBudget& budget, double corr_len);

// Same topology, but the relay decodes and regenerates.  The relay forwards
// only when the whole user block decodes correctly, otherwise it stays idle
// for the slot and the destination falls back to the direct branch alone.
double exact_ber_cd_df(const LinkBudget& budget, double corr_len);

// Two users relaying for each other, decode-and-forward, distance d_partner
// between the partners; the forwarding partner transmits from the user
// position, so the relayed branch sees the direct-link distance.
double exact_ber_cc(double ebn0_db, double m, int paths, int users, double d_sd,
                    double d_partner, double corr_len);

// Two-moment Gamma fit of the post-correlation SNR; the pair feeds the
// closed-form approximation below.
GammaDist approx_weights(double shape, double scale, double corr_len);

// Closed-form average of Q(sqrt(x)) over x ~ Gamma(w.shape, w.scale).
double approx_ber_from_weights(const GammaDist& w);

// Same average by numerical integration of the finite-angle form; slow,
// kept as a cross-check.
double approx_ber_craig(const GammaDist& w);

double approx_ber(double shape, double scale, double corr_len);

// Closed-form approximation for the relay topology; requires the direct and
// relayed branches to share a common scale (matched geometry), otherwise
// throws.  Uses the same two-slot effective correlator length as the exact
// formula.
double approx_ber_cd_ef(const LinkBudget& budget, double corr_len);

}  // namespace dcsk

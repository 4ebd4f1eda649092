#include "dcsk/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dcsk/quadrature.hpp"
#include "dcsk/special.hpp"

namespace dcsk {

namespace {

void validate(const GammaDist& g, const char* who) {
  if (!(g.shape > 0.0) || !(g.scale > 0.0))
    throw std::invalid_argument(std::string(who) + ": shape and scale must be positive");
}

constexpr double kWeightTailTol = 1e-13;
constexpr int kMaxComponents = 100000;

}  // namespace

double gamma_mgf(const GammaDist& g, double t) {
  validate(g, "gamma_mgf");
  if (!(t * g.scale < 1.0))
    throw std::invalid_argument("gamma_mgf: t must satisfy t * scale < 1");
  return std::exp(-g.shape * std::log1p(-t * g.scale));
}

GammaSum::GammaSum(std::vector<GammaDist> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("GammaSum: no components");
  double b_max = 0.0;
  b0_ = parts_[0].scale;
  for (const auto& p : parts_) {
    validate(p, "GammaSum");
    rho_ += p.shape;
    b0_ = std::min(b0_, p.scale);
    b_max = std::max(b_max, p.scale);
    mean_ += p.shape * p.scale;
    var_ += p.shape * p.scale * p.scale;
  }
  single_ = (b_max - b0_) <= 1e-12 * b_max;
  if (single_) {
    weights_ = {1.0};
    return;
  }
  // Single-scale mixture expansion: the density is sum_i w_i g(x; rho + i, b0)
  // where the w_i follow a convolution-type recursion and sum to one.
  const std::size_t k = parts_.size();
  double log_c = 0.0;
  std::vector<double> base(k), pw(k, 1.0);
  for (std::size_t j = 0; j < k; ++j) {
    base[j] = 1.0 - b0_ / parts_[j].scale;
    log_c += parts_[j].shape * std::log(b0_ / parts_[j].scale);
  }
  std::vector<long double> eta = {1.0L};
  std::vector<double> z;  // z[j] for exponent j + 1
  double cum = std::exp(log_c);
  weights_ = {cum};
  while (cum < 1.0 - kWeightTailTol) {
    if (static_cast<int>(eta.size()) > kMaxComponents)
      throw std::runtime_error(
          "GammaSum: scale spread too large for the mixture expansion");
    const std::size_t i = eta.size();  // computing eta_i
    double zi = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      pw[j] *= base[j];
      zi += parts_[j].shape * pw[j];
    }
    z.push_back(zi / static_cast<double>(i));
    long double acc = 0.0L;
    for (std::size_t t = 1; t <= i; ++t)
      acc += static_cast<long double>(t) * z[t - 1] * eta[i - t];
    eta.push_back(acc / static_cast<long double>(i));
    const double w = static_cast<double>(
        std::exp(static_cast<long double>(log_c) + std::log(eta.back())));
    weights_.push_back(w);
    cum += w;
  }
}

double GammaSum::pdf(double x) const {
  if (!(x > 0.0)) return 0.0;
  if (single_) {
    const double lw = gamma_log_pdf(x, rho_, b0_);
    return lw < -745.0 ? 0.0 : std::exp(lw);
  }
  // Component log-densities differ by log(x / (b0 (rho + i))) between
  // consecutive shapes, so walk them instead of recomputing.
  double la = gamma_log_pdf(x, rho_, b0_);
  const double lx = std::log(x);
  const double lb = std::log(b0_);
  double acc = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (la > -745.0) acc += weights_[i] * std::exp(la);
    la += lx - lb - std::log(rho_ + static_cast<double>(i));
  }
  return acc;
}

double GammaSum::log_sf_bound(double x) const {
  if (x <= mean_) return 0.0;
  double b_max = 0.0;
  for (const auto& p : parts_) b_max = std::max(b_max, p.scale);
  double best = 0.0;
  for (int j = 1; j <= 60; ++j) {
    const double t = (1.0 - std::pow(2.0, -j)) / b_max;
    double v = -t * x;
    for (const auto& p : parts_) v -= p.shape * std::log1p(-t * p.scale);
    best = std::min(best, v);
  }
  return best;
}

double GammaSum::expectation(const std::function<double(double)>& f,
                             double abs_tol) const {
  if (single_) return gamma_expectation(f, rho_, b0_, abs_tol);
  if (rho_ < 1.0)
    throw std::runtime_error("GammaSum: total shape below one not supported");
  const double sd = std::sqrt(var_);
  double x_hi = mean_ + 10.0 * sd;
  while (log_sf_bound(x_hi) > -40.0) x_hi *= 2.0;
  std::vector<double> marks = {0.0,
                               mean_ - 8.0 * sd,
                               mean_ - 4.0 * sd,
                               mean_ - 2.0 * sd,
                               mean_,
                               mean_ + 2.0 * sd,
                               mean_ + 4.0 * sd,
                               mean_ + 8.0 * sd,
                               x_hi};
  for (double& m : marks) m = std::clamp(m, 0.0, x_hi);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  const auto integrand = [&](double x) { return x > 0.0 ? f(x) * pdf(x) : 0.0; };
  double total = 0.0;
  const double seg_tol = abs_tol / static_cast<double>(marks.size());
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    const auto r = integrate_adaptive(integrand, marks[i], marks[i + 1], seg_tol);
    if (!r.converged)
      throw std::runtime_error("GammaSum: expectation quadrature did not converge");
    total += r.value;
  }
  return total;
}

double conditional_ber(double snr, double corr_len) {
  if (!(corr_len >= 1.0))
    throw std::invalid_argument("conditional_ber: corr_len must be >= 1");
  if (snr < 0.0) throw std::invalid_argument("conditional_ber: snr must be >= 0");
  if (snr == 0.0) return 0.5;
  return q_function(snr / std::sqrt(2.0 * snr + corr_len));
}

double exact_ber(const GammaDist& snr_dist, double corr_len, double abs_tol) {
  validate(snr_dist, "exact_ber");
  const auto f = [corr_len](double g) { return conditional_ber(g, corr_len); };
  return gamma_expectation(f, snr_dist.shape, snr_dist.scale, abs_tol);
}

double exact_ber(const GammaSum& snr_dist, double corr_len, double abs_tol) {
  const auto f = [corr_len](double g) { return conditional_ber(g, corr_len); };
  return snr_dist.expectation(f, abs_tol);
}

double exact_ber_nc(double ebn0_db, double m, int paths, double corr_len) {
  if (!(m > 0.0)) throw std::invalid_argument("exact_ber_nc: m must be positive");
  if (paths < 1) throw std::invalid_argument("exact_ber_nc: paths must be >= 1");
  const double s = std::pow(10.0, ebn0_db / 10.0);
  const double shape = m * paths;
  return exact_ber(GammaDist{shape, s / shape}, corr_len);
}

LinkBudget make_link_budget(double ebn0_db, double m, int paths, int users,
                            int relay_antennas, int dest_antennas, double d_sd,
                            double d_sr, double d_rd) {
  if (!(m > 0.0)) throw std::invalid_argument("make_link_budget: m must be positive");
  if (paths < 1 || users < 1 || relay_antennas < 1 || dest_antennas < 1)
    throw std::invalid_argument("make_link_budget: counts must be >= 1");
  if (!(d_sd > 0.0) || !(d_sr > 0.0) || !(d_rd > 0.0))
    throw std::invalid_argument("make_link_budget: distances must be positive");
  const double s = std::pow(10.0, ebn0_db / 10.0);
  const double mr = relay_antennas, md = dest_antennas;
  const double n = users, L = paths;
  LinkBudget b;
  b.sd = {md * m * L, s / (2.0 * md * d_sd * d_sd * m * n * L)};
  b.rd = {mr * md * m * L, s / (2.0 * mr * md * d_rd * d_rd * m * n * L)};
  b.sr = {mr * m * L, s / (2.0 * mr * d_sr * d_sr * m * n * L)};
  b.users = users;
  b.relay_antennas = relay_antennas;
  b.dest_antennas = dest_antennas;
  return b;
}

double exact_ber_cd_ef(const LinkBudget& budget, double corr_len) {
  // Two slots of dest_antennas correlators each; the branch SNRs add while
  // every correlator brings its own corr_len worth of noise-noise variance.
  const GammaSum combined({budget.sd, budget.rd});
  return exact_ber(combined, 2.0 * budget.dest_antennas * corr_len);
}

double exact_ber_cd_df(const LinkBudget& budget, double corr_len) {
  // The relay sums its receive-antenna correlators, then either forwards the
  // whole decoded block or idles, so one bad user bit costs the slot for all.
  const double p_user =
      exact_ber(budget.sr, budget.relay_antennas * corr_len);
  const double p_idle =
      1.0 - std::pow(1.0 - p_user, static_cast<double>(budget.users));
  const double p_sd = exact_ber(budget.sd, budget.dest_antennas * corr_len);
  const double p_comb = exact_ber_cd_ef(budget, corr_len);
  return p_idle * p_sd + (1.0 - p_idle) * p_comb;
}

double exact_ber_cc(double ebn0_db, double m, int paths, int users, double d_sd,
                    double d_partner, double corr_len) {
  if (!(d_partner > 0.0))
    throw std::invalid_argument("exact_ber_cc: d_partner must be positive");
  // The partner acts as a single-antenna relay that hears its mate over the
  // inter-user link and forwards from the user position, so the relayed
  // branch reuses the direct-link distance.
  const LinkBudget budget =
      make_link_budget(ebn0_db, m, paths, users, 1, 1, d_sd, d_partner, d_sd);
  return exact_ber_cd_df(budget, corr_len);
}

GammaDist approx_weights(double shape, double scale, double corr_len) {
  validate(GammaDist{shape, scale}, "approx_weights");
  if (!(corr_len >= 1.0))
    throw std::invalid_argument("approx_weights: corr_len must be >= 1");
  const double g = shape * scale;
  const double half = g + 0.5 * corr_len;
  const double full = g + corr_len;
  const double a_w = shape * (half / full) * (half / full);
  const double b_w = scale * g * full * full / (2.0 * half * half * half);
  return {a_w, b_w};
}

double approx_ber_from_weights(const GammaDist& w) {
  validate(w, "approx_ber_from_weights");
  const double a = w.shape, b = w.scale;
  const double z = 2.0 / (2.0 + b);
  const double omz = b / (2.0 + b);
  const double log_coef = -std::log(2.0) - 0.5 * std::log(2.0 * M_PI) +
                          0.5 * std::log(b) + log_gamma(a + 0.5) -
                          (a + 0.5) * std::log1p(0.5 * b) - log_gamma(a + 1.0);
  return std::exp(log_coef) * gauss_2f1_special(a, z, omz);
}

double approx_ber_craig(const GammaDist& w) {
  validate(w, "approx_ber_craig");
  const double a = w.shape, b = w.scale;
  const auto f = [a, b](double theta) {
    const double s = std::sin(theta);
    return std::exp(-a * std::log1p(0.5 * b / (s * s)));
  };
  const auto r = integrate_adaptive(f, 0.0, 0.5 * M_PI, 1e-12);
  if (!r.converged)
    throw std::runtime_error("approx_ber_craig: quadrature did not converge");
  return r.value / M_PI;
}

double approx_ber(double shape, double scale, double corr_len) {
  return approx_ber_from_weights(approx_weights(shape, scale, corr_len));
}

double approx_ber_cd_ef(const LinkBudget& budget, double corr_len) {
  const double rel = std::abs(budget.sd.scale - budget.rd.scale) /
                     std::max(budget.sd.scale, budget.rd.scale);
  if (rel > 1e-12)
    throw std::invalid_argument(
        "approx_ber_cd_ef: branches must share a common scale "
        "(requires d_sd^2 = relay_antennas * d_rd^2)");
  return approx_ber(budget.sd.shape + budget.rd.shape, budget.sd.scale,
                    2.0 * budget.dest_antennas * corr_len);
}

}  // namespace dcsk

#include "dcsk/special.hpp"

#include <cmath>
#include <stdexcept>

extern "C" double lgamma_r(double, int*);

namespace dcsk {

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("log_gamma: x must be positive");
  int sign = 0;
  return lgamma_r(x, &sign);
}

double q_function(double x) {
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double gamma_log_pdf(double x, double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw std::invalid_argument("gamma_log_pdf: shape and scale must be positive");
  if (!(x > 0.0)) throw std::invalid_argument("gamma_log_pdf: x must be positive");
  return (shape - 1.0) * std::log(x) - x / scale - log_gamma(shape) -
         shape * std::log(scale);
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("inverse_normal_cdf: p must lie in (0, 1)");
  // Work on the lower tail; mirror at the end. The rational approximations
  // are Acklam's (relative error below 1.2e-9 on their own).
  const double pl = p <= 0.5 ? p : 1.0 - p;
  double z;
  if (pl < 0.02425) {
    const double q = std::sqrt(-2.0 * std::log(pl));
    z = (((((-7.784894002430293e-03 * q - 3.223964580411365e-01) * q -
            2.400758277161838e+00) *
               q -
           2.549732539343734e+00) *
              q +
          4.374664141464968e+00) *
             q +
         2.938163982698783e+00) /
        ((((7.784695709041462e-03 * q + 3.224671290700398e-01) * q +
           2.445134137142996e+00) *
              q +
          3.754408661907416e+00) *
             q +
         1.0);
  } else {
    const double q = pl - 0.5;
    const double r = q * q;
    z = (((((-3.969683028665376e+01 * r + 2.209460984245205e+02) * r -
            2.759285104469687e+02) *
               r +
           1.383577518672690e+02) *
              r -
          3.066479806614716e+01) *
             r +
         2.506628277459239e+00) *
        q /
        (((((-5.447609879822406e+01 * r + 1.615858368580409e+02) * r -
            1.556989798598866e+02) *
               r +
           6.680131188771972e+01) *
              r -
          1.328068155288572e+01) *
             r +
         1.0);
  }
  // One Halley step against Phi(z) - pl, using Phi(z) = Q(-z) and
  // phi'(z) = -z phi(z). Skipped where exp(z^2 / 2) would overflow; the
  // initial guess is already good to nine digits there.
  if (0.5 * z * z < 700.0) {
    const double err = q_function(-z) - pl;
    const double u =
        err * std::sqrt(2.0 * M_PI) * std::exp(0.5 * z * z);
    z -= u / (1.0 + 0.5 * z * u);
  }
  return p <= 0.5 ? z : -z;
}

namespace {

// Defining series. All terms positive; the term ratio is strictly below z, so
// this converges for any z < 1 at geometric rate z.
double series_2f1(double a, double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < 50000000; ++n) {
    term *= (a + 0.5 + n) / (a + 1.0 + n) * z;
    sum += term;
    if (term < sum * 1e-17) return sum;
  }
  throw std::runtime_error("gauss_2f1_special: series did not converge");
}

// Auxiliary series 2F1(1, a + 1/2; 3/2; w) for small w. Terms may grow before
// decaying when a*w is large, but all are positive.
double series_aux(double a, double w) {
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < 10000000; ++n) {
    term *= (a + 0.5 + n) / (1.5 + n) * w;
    sum += term;
    if (term < sum * 1e-17 && (1.5 + n) > (a + 0.5 + n) * w) return sum;
  }
  throw std::runtime_error("gauss_2f1_special: auxiliary series did not converge");
}

}  // namespace

double gauss_2f1_special(double a, double z, double one_minus_z) {
  if (!(a > 0.0)) throw std::invalid_argument("gauss_2f1_special: a must be positive");
  if (z < 0.0 || one_minus_z <= 0.0)
    throw std::invalid_argument("gauss_2f1_special: need 0 <= z < 1");
  if (z == 0.0) return 1.0;
  // Near z = 1 the connection formula converges immediately, but its two terms
  // cancel by roughly exp(a * (1 - z)); only use it when that factor is tame.
  if (z <= 0.9 || a * one_minus_z > 5.0) return series_2f1(a, z);
  const double t1 = -2.0 * a * series_aux(a, one_minus_z);
  const double log_ratio = log_gamma(a + 1.0) - log_gamma(a + 0.5);
  const double t2 = std::exp(log_ratio + 0.5 * std::log(M_PI) -
                             0.5 * std::log(one_minus_z) - a * std::log(z));
  return t1 + t2;
}

double gauss_2f1_special(double a, double z) {
  return gauss_2f1_special(a, z, 1.0 - z);
}

}  // namespace dcsk

#pragma once

namespace dcsk {

// Thread-safe log Gamma for x > 0.
double log_gamma(double x);

// Gaussian tail probability Q(x) = P(N(0,1) > x).
double q_function(double x);

// Log density of Gamma(shape, scale) at x > 0.
double gamma_log_pdf(double x, double shape, double scale);

// Inverse standard normal CDF on (0, 1): rational initial guess polished by
// one Halley step against q_function, full double accuracy except in the
// extreme denormal tails.
double inverse_normal_cdf(double p);

// Gauss hypergeometric 2F1(1, a + 1/2; a + 1; z) for a > 0, 0 <= z < 1.
// Uses the defining series away from z = 1 and a connection formula near it.
double gauss_2f1_special(double a, double z);

// Same, with 1 - z supplied exactly by the caller (avoids cancellation when
// z is close to 1).
double gauss_2f1_special(double a, double z, double one_minus_z);

}  // namespace dcsk

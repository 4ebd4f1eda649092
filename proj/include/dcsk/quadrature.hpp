#pragma once

#include <functional>
#include <utility>

namespace dcsk {

struct IntegrationResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
};

// One Gauss-Kronrod 7-15 panel over [lo, hi]. Returns (kronrod, gauss).
std::pair<double, double> gauss_kronrod_15(const std::function<double(double)>& f,
                                           double lo, double hi);

// Globally adaptive bisection driven by the Kronrod-Gauss discrepancy.
IntegrationResult integrate_adaptive(const std::function<double(double)>& f,
                                     double lo, double hi, double abs_tol,
                                     int max_segments = 4000);

// E[f(X)] for X ~ Gamma(shape, scale), to absolute tolerance abs_tol.
// Requires |f| <= 1 so that truncated tails stay below the tolerance.
double gamma_expectation(const std::function<double(double)>& f, double shape,
                         double scale, double abs_tol = 1e-10);

}  // namespace dcsk

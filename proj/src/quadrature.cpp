#include "dcsk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "dcsk/special.hpp"

namespace dcsk {

namespace {

// Gauss-Kronrod 7-15 abscissae (positive half) and weights.
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767,
                           0.3818300505051189, 0.4179591836734694};

struct Segment {
  double lo, hi, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment evaluate(const std::function<double(double)>& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  double kron = kWgk[7] * f(c);
  double gauss = kWg[3] * f(c);
  for (int i = 0; i < 7; ++i) {
    const double fp = f(c + h * kXgk[i]);
    const double fm = f(c - h * kXgk[i]);
    kron += kWgk[i] * (fp + fm);
    if (i % 2 == 1) gauss += kWg[i / 2] * (fp + fm);
  }
  kron *= h;
  gauss *= h;
  return {lo, hi, kron, std::abs(kron - gauss)};
}

}  // namespace

std::pair<double, double> gauss_kronrod_15(const std::function<double(double)>& f,
                                           double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  double kron = kWgk[7] * f(c);
  double gauss = kWg[3] * f(c);
  for (int i = 0; i < 7; ++i) {
    const double fp = f(c + h * kXgk[i]);
    const double fm = f(c - h * kXgk[i]);
    kron += kWgk[i] * (fp + fm);
    if (i % 2 == 1) gauss += kWg[i / 2] * (fp + fm);
  }
  return {kron * h, gauss * h};
}

IntegrationResult integrate_adaptive(const std::function<double(double)>& f,
                                     double lo, double hi, double abs_tol,
                                     int max_segments) {
  if (!(hi > lo)) {
    if (hi == lo) return {0.0, 0.0, true};
    throw std::invalid_argument("integrate_adaptive: hi < lo");
  }
  std::priority_queue<Segment> queue;
  queue.push(evaluate(f, lo, hi));
  double total_error = queue.top().error;
  int n = 1;
  while (total_error > abs_tol && n < max_segments) {
    const Segment worst = queue.top();
    queue.pop();
    total_error -= worst.error;
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // Interval at floating-point resolution; keep its estimate as-is.
      total_error += worst.error;
      queue.push(worst);
      break;
    }
    const Segment left = evaluate(f, worst.lo, mid);
    const Segment right = evaluate(f, mid, worst.hi);
    total_error += left.error + right.error;
    queue.push(left);
    queue.push(right);
    ++n;
  }
  double value = 0.0;
  double error = 0.0;
  std::vector<Segment> rest;
  rest.reserve(queue.size());
  while (!queue.empty()) {
    rest.push_back(queue.top());
    queue.pop();
  }
  // Sum smallest contributions first.
  std::sort(rest.begin(), rest.end());
  for (const Segment& s : rest) {
    value += s.value;
    error += s.error;
  }
  return {value, error, error <= abs_tol};
}

namespace {

// log P(X > x) upper bound for X ~ Gamma(shape, scale), valid for
// x > shape * scale (Chernoff).
double chernoff_log_sf(double x, double shape, double scale) {
  const double r = x / scale;
  return shape - r + shape * std::log(r / shape);
}

// For very large shapes the direct log-density sums terms of magnitude
// ~shape*log(shape) that cancel to O(1); the leftover rounding noise sits
// above fine tolerances. Recentre on the mean: with x = mean * (1 + d),
//   log pdf = C + shape * (log1p(d) - d) - log1p(d),
//   C = (shape - 1) * log(shape) - log(scale) - shape - lgamma(shape),
// where only C carries the large magnitudes, so it is evaluated once in
// extended precision.
class BigShapeLogPdf {
 public:
  BigShapeLogPdf(double shape, double scale) : shape_(shape), mean_(shape * scale) {
    const long double a = shape;
    c_ = static_cast<double>((a - 1.0L) * std::log(a) -
                             std::log(static_cast<long double>(scale)) - a -
                             std::lgamma(a));
  }
  double operator()(double x) const {
    const double d = (x - mean_) / mean_;
    if (d <= -1.0) return -std::numeric_limits<double>::infinity();
    const double l1p = std::log1p(d);
    return c_ + shape_ * (l1p - d) - l1p;
  }

 private:
  double shape_, mean_, c_;
};

}  // namespace

double gamma_expectation(const std::function<double(double)>& f, double shape,
                         double scale, double abs_tol) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw std::invalid_argument("gamma_expectation: shape and scale must be positive");
  const double mean = shape * scale;
  const double sd = std::sqrt(shape) * scale;

  double x_hi = mean + 10.0 * sd + 10.0 * scale;
  while (chernoff_log_sf(x_hi, shape, scale) > -40.0) x_hi *= 2.0;

  std::vector<double> marks;
  if (shape >= 1.0) {
    // Integrate in x. The density vanishes (or is bounded) at 0.
    marks = {0.0,        mean - 8.0 * sd, mean - 4.0 * sd, mean - 2.0 * sd,
             mean,       mean + 2.0 * sd, mean + 4.0 * sd, mean + 8.0 * sd,
             x_hi};
    for (double& m : marks) m = std::clamp(m, 0.0, x_hi);
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    const BigShapeLogPdf big(shape, scale);
    const bool use_big = shape > 100.0;
    const auto integrand = [&](double x) {
      if (x <= 0.0) return 0.0;
      const double lw = use_big ? big(x) : gamma_log_pdf(x, shape, scale);
      if (lw < -745.0) return 0.0;
      return f(x) * std::exp(lw);
    };
    double total = 0.0;
    const double seg_tol = abs_tol / static_cast<double>(marks.size());
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
      const auto r = integrate_adaptive(integrand, marks[i], marks[i + 1], seg_tol);
      if (!r.converged)
        throw std::runtime_error("gamma_expectation: quadrature did not converge");
      total += r.value;
    }
    return total;
  }

  // shape < 1: the density is singular at 0, so substitute x = e^u. Then
  // pdf(x) dx = exp(shape*t - e^t - lgamma(shape)) du with t = u - ln(scale),
  // which is smooth and decays at both ends.
  const double log_norm = log_gamma(shape);
  // Mass below x_lo is under exp(shape*log(x_lo/scale) - lgamma(shape+1)).
  const double u_lo =
      std::log(scale) + (-40.0 + log_gamma(shape + 1.0)) / shape;
  const double u_hi = std::log(x_hi);
  marks = {u_lo,
           std::log(scale) - 8.0,
           std::log(scale) - 2.0,
           std::log(scale),
           std::log(std::max(mean, 1e-300)),
           std::log(std::max(mean + 4.0 * sd, 1e-300)),
           u_hi};
  for (double& m : marks) m = std::clamp(m, u_lo, u_hi);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  const auto integrand = [&](double u) {
    const double t = u - std::log(scale);
    const double log_w = shape * t - std::exp(t) - log_norm;
    if (log_w < -745.0) return 0.0;
    return f(std::exp(u)) * std::exp(log_w);
  };
  double total = 0.0;
  const double seg_tol = abs_tol / static_cast<double>(marks.size());
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    const auto r = integrate_adaptive(integrand, marks[i], marks[i + 1], seg_tol);
    if (!r.converged)
      throw std::runtime_error("gamma_expectation: quadrature did not converge");
    total += r.value;
  }
  return total;
}

}  // namespace dcsk

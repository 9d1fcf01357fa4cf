#include "bosegas/special.hpp"

#include <cmath>
#include <limits>

namespace bosegas {

namespace {

// e^{x^2} with the rounding error of x*x folded back in.
double exp_square(double x) {
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  return std::exp(hi) * (1.0 + lo);
}

// sqrt(pi) * erfcx(x) for x >= 4 by the Laplace continued fraction
//   1 / (x + (1/2) / (x + (2/2) / (x + (3/2) / (x + ...)))),
// evaluated with the modified Lentz algorithm.
double erfcx_cf(double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-17;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int n = 1; n < 10000; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = x + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < eps) break;
  }
  return 1.0 / f;
}

double erfcx_nonneg(double x) {
  if (x < 4.0) return exp_square(x) * std::erfc(x);
  return erfcx_cf(x) / kSqrtPi;
}

}  // namespace

double erfcx(double x) {
  if (x >= 0.0) return erfcx_nonneg(x);
  return 2.0 * exp_square(x) - erfcx_nonneg(-x);
}

double log_erfcx(double x) {
  if (x >= 0.0) return std::log(erfcx_nonneg(x));
  // erfcx(x) = 2 e^{x^2} (1 - erfcx(-x) e^{-x^2} / 2)
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  const double small = 0.5 * erfcx_nonneg(-x) * std::exp(-hi) * (1.0 - lo);
  return hi + lo + std::log(2.0) + std::log1p(-small);
}

double bose_factor(double x) { return 1.0 / std::expm1(x); }

double log1m_exp(double x) {
  // Two-branch form keeps full relative accuracy on both ends.
  return x > std::log(2.0) ? std::log1p(-std::exp(-x)) : std::log(-std::expm1(-x));
}

double x_minus_log1p(double x) {
  if (std::fabs(x) < 1e-2) {
    // x^2/2 - x^3/3 + x^4/4 - ...
    double term = x * x;
    double sum = 0.0;
    for (int k = 2; k < 30; ++k) {
      const double t = term / k;
      sum += (k % 2 == 0) ? t : -t;
      if (std::fabs(t) < 1e-18 * std::fabs(sum)) break;
      term *= x;
    }
    return sum;
  }
  return x - std::log1p(x);
}

}  // namespace bosegas

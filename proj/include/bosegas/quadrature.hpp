#pragma once

#include <functional>
#include <span>
#include <string>

namespace bosegas::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
};

/// Adaptive Gauss-Kronrod integration of f over [a, b]; b may be +infinity.
/// Interior breakpoints split the domain where the integrand has structure
/// (a narrow peak, a kink). Throws ResolutionError carrying a per-segment
/// trace when the requested relative tolerance is not met.
Result integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 std::span<const double> breakpoints = {});

}  // namespace bosegas::quad

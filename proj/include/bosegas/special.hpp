#pragma once

// Scalar special functions shared by the numeric modules.

#include <numbers>

namespace bosegas {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrtPi = 1.7724538509055160273;
// Riemann zeta(3/2).
inline constexpr double kZeta32 = 2.6123753486854883433;

/// Scaled complementary error function e^{x^2} erfc(x). Finite for every x
/// with x^2 < ~709 on the negative side; use log_erfcx beyond that.
double erfcx(double x);

/// ln(erfcx(x)), overflow free for all finite x.
double log_erfcx(double x);

/// Bose factor 1/(e^x - 1) for x > 0.
double bose_factor(double x);

/// ln(1 - e^{-x}) for x > 0.
double log1m_exp(double x);

/// x - ln(1 + x) for x >= 0 without cancellation at small x.
double x_minus_log1p(double x);

}  // namespace bosegas

#include "bosegas/condensate.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <limits>

#include "bosegas/error.hpp"
#include "bosegas/special.hpp"

namespace bosegas {

namespace {

// Below this eta the forward forms cancel; the continued fraction takes over.
constexpr double kBackwardBelow = -1.0;
constexpr int kDepth = 400;

// rho_k = I_k / I_{k-1} for k = 1..kmax by the backward recursion
// rho_k = (k/2) / (y + rho_{k+1}), y = -eta, started from its fixed point.
std::vector<double> backward_ratios(double eta, int kmax) {
  const double y = -eta;
  const int K = kDepth + kmax;
  double rho = 0.5 * (-y + std::sqrt(y * y + 2.0 * (K + 1)));
  std::vector<double> out(kmax + 1, 0.0);
  for (int k = K; k >= 1; --k) {
    rho = 0.5 * k / (y + rho);
    if (k <= kmax) out[k] = rho;
  }
  return out;
}

// e^{-eta^2} / I_0 scaled: 1/(sqrt(pi) erfcx(-eta)) = I_1/I_0 - eta.
double delta(double eta) { return 1.0 / (kSqrtPi * erfcx(-eta)); }

// ln I_0 with I_0 = (sqrt(pi)/2) erfc(-eta); free of eta^2 for eta >= 0.
double log_I0(double eta) {
  if (eta >= 0.0) return std::log(kSqrtPi) + std::log1p(-0.5 * std::erfc(eta));
  return std::log(0.5 * kSqrtPi) + log_erfcx(-eta) - eta * eta;
}

// ln(e^{eta^2} I_0) without forming e^{eta^2}.
double log_scaled_I0(double eta) {
  if (eta >= 0.0) return eta * eta + log_I0(eta);
  return std::log(0.5 * kSqrtPi) + log_erfcx(-eta);
}

}  // namespace

double mean_t(double eta) {
  if (eta < kBackwardBelow) return backward_ratios(eta, 1)[1];
  return eta + delta(eta);
}

double upsilon(double eta) { return kSqrtPi * mean_t(eta); }

std::vector<double> moment_ratios(double eta, int kmax) {
  require(kmax >= 0, "moment_ratios: kmax must be nonnegative");
  std::vector<double> r(kmax + 1, 1.0);
  if (kmax == 0) return r;
  if (eta < kBackwardBelow) {
    const auto rho = backward_ratios(eta, kmax);
    for (int k = 1; k <= kmax; ++k) r[k] = r[k - 1] * rho[k];
    return r;
  }
  r[1] = eta + delta(eta);
  for (int k = 1; k < kmax; ++k) r[k + 1] = eta * r[k] + 0.5 * k * r[k - 1];
  return r;
}

double condensate_coupling(double a_N, double L) {
  require(a_N >= 0.0 && L > 0.0, "condensate_coupling: need a_N >= 0 and L > 0");
  return 4.0 * kPi * a_N / (L * L * L);
}

CondensateModel solve_condensate_mu(double beta, double h, double M) {
  require(beta > 0.0 && std::isfinite(beta), "solve_condensate_mu: beta must be positive");
  require(h >= 0.0 && std::isfinite(h), "solve_condensate_mu: h must be nonnegative");
  require(M > 0.0 && std::isfinite(M), "solve_condensate_mu: M must be positive");
  CondensateModel m;
  m.beta = beta;
  m.h = h;
  m.M = M;
  if (h == 0.0) {
    m.exact_free = true;
    m.mu = -1.0 / (beta * M);
    return m;
  }
  const double s = std::sqrt(beta * h);
  const double target = kSqrtPi * s * M;
  const auto g = [&](double eta) { return upsilon(eta) - target; };
  double lo, hi;
  if (target >= 1.0) {
    lo = 0.0;
    hi = target / kSqrtPi + 1.0;
  } else {
    hi = 0.0;
    lo = -kSqrtPi / target - 1.0;
  }
  std::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(g, lo, hi, g(lo), g(hi),
                                                       boost::math::tools::eps_tolerance<double>(53), iters);
  double eta = 0.5 * (root.first + root.second);
  // Newton polish with dUpsilon/deta = 2 sqrt(pi) (r2 - r1^2).
  for (int it = 0; it < 2; ++it) {
    const auto r = moment_ratios(eta, 2);
    const double var = eta < kBackwardBelow || eta < 0.0 ? r[2] - r[1] * r[1] : 0.5 - r[1] * delta(eta);
    const double step = g(eta) / (2.0 * kSqrtPi * var);
    if (std::isfinite(step)) eta -= step;
  }
  m.eta_scaled = eta;
  m.mu = 2.0 * eta * std::sqrt(h / beta);
  m.residual = std::fabs(mean_t(eta) / s - M) / M;
  if (m.residual > 1e-10)
    throw SolverError("solve_condensate_mu: inversion residual " + std::to_string(m.residual) + " above 1e-10");
  return m;
}

double moment(int k, const CondensateModel& m) {
  require(k >= 0, "moment: k must be nonnegative");
  if (m.exact_free) return std::tgamma(k + 1.0) * std::pow(m.M, k);
  const auto r = moment_ratios(m.eta_scaled, k);
  return r[k] / std::pow(m.beta * m.h, 0.5 * k);
}

double condensate_variance(const CondensateModel& m) {
  if (m.exact_free) return m.M * m.M;
  double var_t;
  if (m.eta_scaled >= 0.0) {
    const double d = delta(m.eta_scaled);
    var_t = 0.5 - (m.eta_scaled + d) * d;
  } else {
    const auto r = moment_ratios(m.eta_scaled, 2);
    var_t = m.eta_scaled < kBackwardBelow ? r[1] * (r[2] / r[1] - r[1]) : r[2] - r[1] * r[1];
  }
  return var_t / (m.beta * m.h);
}

double log_partition(const CondensateModel& m) {
  if (m.exact_free) return std::log(m.M);
  return -0.5 * std::log(m.beta * m.h) + log_scaled_I0(m.eta_scaled);
}

double fbec(const CondensateModel& m) { return -log_partition(m) / m.beta + m.mu * m.M; }

double fbec(double beta, double M, double L, double a_N) {
  return fbec(solve_condensate_mu(beta, condensate_coupling(a_N, L), M));
}

double condensate_entropy(const CondensateModel& m) {
  if (m.exact_free) return 1.0 + std::log(m.M);
  // S = ln Z + <t^2> - 2 eta <t>.
  if (m.eta_scaled >= 0.0) {
    // The eta^2 in ln Z cancels against <t^2> - 2 eta <t> = 1/2 - eta^2 - eta delta.
    return -0.5 * std::log(m.beta * m.h) + log_I0(m.eta_scaled) + 0.5 - m.eta_scaled * delta(m.eta_scaled);
  }
  const auto r = moment_ratios(m.eta_scaled, 2);
  return log_partition(m) + r[2] - 2.0 * m.eta_scaled * r[1];
}

FluctuationEnergy fluctuation_free_energy(const CondensateModel& m, double N, double a_N, double L) {
  FluctuationEnergy out{};
  out.lhs = m.h * condensate_variance(m) - condensate_entropy(m) / m.beta;
  const double arg = m.beta * a_N / (L * L * L);
  out.rhs_4 = std::log(4.0 * arg) / (2.0 * m.beta);
  out.rhs_16 = std::log(16.0 * arg) / (2.0 * m.beta);
  out.in_regime = m.M >= std::pow(N, 5.0 / 6.0);
  return out;
}

double log_tail_fraction(const CondensateModel& m, double X) {
  require(X >= 0.0, "log_tail_fraction: threshold must be nonnegative");
  if (m.exact_free) {
    // Exponential with mean M: P(x >= X) = e^{-X/M}, E[x; x >= X] = (X + M) e^{-X/M}.
    return -X / m.M + std::log(1.0 + X + m.M) - std::log(1.0 + m.M);
  }
  const double s = std::sqrt(m.beta * m.h);
  const double w = X * s - m.eta_scaled;
  double log_tail0, tail1_over_tail0;
  if (w >= 0.0) {
    const double e = erfcx(w);
    log_tail0 = std::log(0.5 * kSqrtPi * e) - w * w;
    tail1_over_tail0 = m.eta_scaled + 1.0 / (kSqrtPi * e);
  } else {
    const double t0 = 0.5 * kSqrtPi * std::erfc(w);
    log_tail0 = std::log(t0);
    tail1_over_tail0 = m.eta_scaled + 0.5 * std::exp(-w * w) / t0;
  }
  const double log_num = log_tail0 + std::log1p(tail1_over_tail0 / s) - log_I0(m.eta_scaled);
  return log_num - std::log1p(m.M);
}

}  // namespace bosegas

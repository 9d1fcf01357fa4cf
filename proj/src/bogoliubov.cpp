#include "bosegas/bogoliubov.hpp"

#include <cmath>
#include <sstream>

#include "bosegas/error.hpp"
#include "bosegas/quadrature.hpp"
#include "bosegas/special.hpp"

namespace bosegas {

namespace {

void check_mode(double p2, double mu0, double rho0, double Wp) {
  require(std::isfinite(p2) && std::isfinite(mu0) && std::isfinite(Wp), "bogoliubov: non-finite input");
  require(rho0 >= 0.0, "bogoliubov: rho0 must be nonnegative");
  if (!(p2 - mu0 > 0.0)) throw ModelError("bogoliubov: p^2 - mu0 must be positive");
  if (Wp < 0.0) {
    std::ostringstream msg;
    msg << "bogoliubov: pair potential W(p)=" << Wp << " is negative at p^2=" << p2
        << "; the quadratic Hamiltonian is outside its validity";
    throw ModelError(msg.str());
  }
}

// theta with e^{4 theta} = (p^2 - mu0 + 2 W rho0) / (p^2 - mu0).
double theta(double p2, double mu0, double rho0, double Wp) {
  return 0.25 * std::log1p(2.0 * Wp * rho0 / (p2 - mu0));
}

}  // namespace

BogoCoeffs bogo_coeffs(double p2, double mu0, double rho0, double Wp) {
  check_mode(p2, mu0, rho0, Wp);
  const double t = theta(p2, mu0, rho0, Wp);
  return {std::cosh(t), -std::sinh(t)};
}

double dispersion(double p2, double mu0, double rho0, double Wp) {
  check_mode(p2, mu0, rho0, Wp);
  const double e = p2 - mu0;
  return std::sqrt(e) * std::sqrt(e + 2.0 * Wp * rho0);
}

double dispersion_tilde(double p2, double mu0, double rho0, double a_N) {
  require(a_N >= 0.0, "dispersion_tilde: a_N must be nonnegative");
  return dispersion(p2, mu0, rho0, 8.0 * kPi * a_N);
}

Occupation occupations(double p2, double mu0, double rho0, double Wp, double beta, MomentumLabel label) {
  require(beta > 0.0, "occupations: beta must be positive");
  if (label == MomentumLabel::I) {
    if (!(p2 - mu0 > 0.0)) throw ModelError("occupations: p^2 - mu0 must be positive");
    return {bose_factor(beta * (p2 - mu0)), 0.0};
  }
  if (label != MomentumLabel::B) return {};
  check_mode(p2, mu0, rho0, Wp);
  const double t = theta(p2, mu0, rho0, Wp);
  const double n = bose_factor(beta * dispersion(p2, mu0, rho0, Wp));
  const double s = std::sinh(t);
  // u^2 + v^2 = cosh 2t, u v = -sinh(2t)/2.
  return {std::cosh(2.0 * t) * n + s * s, -0.5 * std::sinh(2.0 * t) * (2.0 * n + 1.0)};
}

BogoliubovMode bogoliubov_mode(double p2, double mu0, double rho0, double Wp, double a_N, double beta) {
  BogoliubovMode m;
  m.p2 = p2;
  const auto c = bogo_coeffs(p2, mu0, rho0, Wp);
  m.u = c.u;
  m.v = c.v;
  m.eps = dispersion(p2, mu0, rho0, Wp);
  m.eps_tilde = dispersion_tilde(p2, mu0, rho0, a_N);
  const auto o = occupations(p2, mu0, rho0, Wp, beta, MomentumLabel::B);
  m.gamma = o.gamma;
  m.alpha = o.alpha;
  return m;
}

double ground_shift_pair(double p2, double mu0, double rho0, double Wp) {
  const double eps = dispersion(p2, mu0, rho0, Wp);
  const double A = p2 - mu0 + rho0 * Wp;
  const double B = rho0 * Wp;
  // A - eps = B^2 / (A + eps), since A^2 - eps^2 = B^2.
  return -B * B / (A + eps);
}

double ground_shift(double mu0, double rho0, const std::function<double(double)>& W_of_p,
                    const MomentumLattice& lattice, const MomentumSets& sets) {
  sets.validate();
  const auto window = window_for(MomentumLabel::B, sets);
  require(window.upper <= lattice.p_max(), "ground_shift: lattice does not cover P_B");
  const auto f = [&](double p2) { return 0.5 * ground_shift_pair(p2, mu0, rho0, W_of_p(std::sqrt(p2))); };
  return lattice_sum(f, lattice, window).value;
}

double correction_continuum_integral(double A, double P) {
  require(A >= 0.0 && P > 0.0, "correction_continuum_integral: need A >= 0 and P > 0");
  if (A == 0.0) return 0.0;
  const double x = A / (P * P);
  if (x < 0.25) {
    // P^3 sum_{k>=2} (-1)^k x^k / (k (2k - 3)).
    double xk = x, s = 0.0;
    for (int k = 2; k < 80; ++k) {
      xk *= x;
      const double c = (k % 2 == 0 ? xk : -xk) / (k * (2.0 * k - 3.0));
      s += c;
      if (std::fabs(c) < 1e-18 * s) break;
    }
    return P * P * P * s;
  }
  // Antiderivative G(p) = (A/3) p - (p^3/3) ln(1 + A/p^2) + (2/3) A^{3/2} atan(p/sqrt A), G(inf) = (pi/3) A^{3/2}.
  const double rA = std::sqrt(A);
  return (2.0 / 3.0) * A * rA * std::atan(rA / P) - (A / 3.0) * P + (P * P * P / 3.0) * std::log1p(x);
}

CorrectionSum bogo_correction_sum(double beta, double a_N, double rho0, const MomentumLattice& lattice) {
  require(beta > 0.0, "bogo_correction_sum: beta must be positive");
  require(a_N >= 0.0 && rho0 >= 0.0, "bogo_correction_sum: need a_N, rho0 >= 0");
  CorrectionSum out;
  const double A = 16.0 * kPi * a_N * rho0;
  if (A == 0.0) return out;
  const auto f = [A](double p2) { return x_minus_log1p(A / p2); };
  TailSpec tail;
  tail.majorant = [A](double r) { return 0.5 * A * A / (r * r * r * r); };
  const auto s = lattice_sum(f, lattice, RadialWindow{}, tail);
  const double L = lattice.L();
  const double cont = std::pow(L / (2.0 * kPi), 3) * 4.0 * kPi * correction_continuum_integral(A, lattice.p_max());
  const double pre = -0.5 / beta;
  out.lattice_part = pre * s.value;
  out.continuum = pre * cont;
  out.value = out.lattice_part + out.continuum;
  out.tail_bound = 0.5 / beta * s.tail_bound;
  return out;
}

GrandPotentialExpansion grand_potential_expansion(const IdealGasState& gas, double a_N,
                                                  const MomentumLattice& lattice, const MomentumSets& sets) {
  sets.validate();
  GrandPotentialExpansion g;
  const auto window = window_for(MomentumLabel::B, sets);
  require(window.upper <= lattice.p_max(), "grand_potential_expansion: lattice does not cover P_B");
  const double b = gas.beta, mu0 = gas.mu0, rho0 = gas.rho0;
  g.lhs = lattice_sum([&](double p2) { return log1m_exp(b * dispersion_tilde(p2, mu0, rho0, a_N)) / b; },
                      lattice, window).value;
  g.free_term = lattice_sum([&](double p2) { return log1m_exp(b * (p2 - mu0)) / b; }, lattice, window).value;
  g.number_term = 8.0 * kPi * a_N * rho0 *
                  lattice_sum([&](double p2) { return bose_factor(b * (p2 - mu0)); }, lattice, window).value;
  g.correction = bogo_correction_sum(b, a_N, rho0, lattice).value;
  g.rhs = g.free_term + g.number_term + g.correction;
  g.gap = g.rhs - g.lhs;
  const double nB = std::pow(sets.N, sets.delta_B), L2 = sets.L * sets.L;
  const double r = gas.N0 / gas.N;
  g.envelope = r * r * (nB / L2 + 1.0 / (b * nB) + L2 / (b * b * gas.N0));
  return g;
}

PhiBogDecomposition phi_bog(const IdealGasState& gas, double a_N, const MomentumLattice& lattice) {
  PhiBogDecomposition d;
  const double b = gas.beta, mu0 = gas.mu0, rho0 = gas.rho0;
  // Summands are negated to satisfy the nonnegative, decreasing tail contract.
  const auto direct = lattice_sum(
      [&](double p2) { return -log1m_exp(b * dispersion_tilde(p2, mu0, rho0, a_N)) / b; }, lattice);
  const auto free = lattice_sum([&](double p2) { return -log1m_exp(b * (p2 - mu0)) / b; }, lattice);
  d.direct = -direct.value;
  d.free_term = -free.value;
  const double L3 = std::pow(gas.L, 3);
  d.interaction = 8.0 * kPi * a_N * L3 * (gas.N / L3 - rho0) * rho0;
  const auto c = bogo_correction_sum(b, a_N, rho0, lattice);
  d.correction = c.value;
  d.recombined = d.free_term + d.interaction + d.correction;
  d.residual = d.direct - d.recombined;
  d.tail_bound = direct.tail_bound + free.tail_bound + c.tail_bound;
  return d;
}

LhyIntegral lhy_integral(double beta, double a, double rho0) {
  require(beta > 0.0, "lhy_integral: beta must be positive");
  require(a * rho0 >= 0.0, "lhy_integral: a rho0 must be nonnegative");
  LhyIntegral out;
  const double ar = a * rho0;
  if (ar == 0.0) return out;
  out.closed_form = -(16.0 * kSqrtPi / (3.0 * beta)) * ar * std::sqrt(ar);
  const double A = 16.0 * kPi * ar;
  const double s = std::sqrt(A);
  // Radial integral up to a cut, closed-form remainder beyond it.
  const double cut = 1e3 * s;
  const double breaks[] = {1e-3 * s, 1e-2 * s, 1e-1 * s, s, 10.0 * s, 100.0 * s};
  const auto res = quad::integrate([A](double p) { return p > 0.0 ? p * p * x_minus_log1p(A / (p * p)) : A; },
                                   0.0, cut, 1e-10, breaks);
  const double radial = res.value + correction_continuum_integral(A, cut);
  out.quadrature = -4.0 * kPi * radial / (2.0 * beta * std::pow(2.0 * kPi, 3));
  return out;
}

double trial_condensate_number(const IdealGasState& gas, const std::function<double(double)>& W_of_p,
                               const MomentumLattice& lattice, const MomentumSets& sets) {
  sets.validate();
  const auto wB = window_for(MomentumLabel::B, sets);
  const auto wI = window_for(MomentumLabel::I, sets);
  require(wI.upper <= lattice.p_max(), "trial_condensate_number: lattice does not cover P_B and P_I");
  const double b = gas.beta, mu0 = gas.mu0, rho0 = gas.rho0;
  const double sB = lattice_sum([&](double p2) {
    return occupations(p2, mu0, rho0, W_of_p(std::sqrt(p2)), b, MomentumLabel::B).gamma;
  }, lattice, wB).value;
  const double sI = lattice_sum([&](double p2) { return bose_factor(b * (p2 - mu0)); }, lattice, wI).value;
  return gas.N - sB - sI;
}

}  // namespace bosegas

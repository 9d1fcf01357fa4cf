#include "bosegas/ideal_gas.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bosegas/error.hpp"
#include "bosegas/special.hpp"

namespace bosegas {

double critical_beta(double N, double L) {
  require(N >= 1.0 && L > 0.0, "critical_beta: need N >= 1 and L > 0");
  return std::pow(N / (L * L * L * kZeta32), -2.0 / 3.0) / (4.0 * kPi);
}

double default_p_max(double beta, double L) {
  require(beta > 0.0 && L > 0.0, "default_p_max: need beta > 0 and L > 0");
  return std::max(std::sqrt(48.0 / beta), 2.0 * 2.0 * kPi / L);
}

namespace {

// Sum over nonzero lattice momenta of 1/(e^{beta(p^2 + t/beta)} - 1), t = -beta mu.
SumResult excited_number(double beta, double t, const MomentumLattice& lattice) {
  return lattice_sum([beta, t](double p2) { return bose_factor(beta * p2 + t); }, lattice);
}

// Sum over nonzero lattice momenta of n(n+1), the mu-derivative weight.
double excited_derivative(double beta, double t, const MomentumLattice& lattice) {
  return lattice_sum(
             [beta, t](double p2) {
               const double n = bose_factor(beta * p2 + t);
               return n * (n + 1.0);
             },
             lattice)
      .value;
}

}  // namespace

SumResult ideal_particle_number(double beta, double mu, const MomentumLattice& lattice) {
  require(beta > 0.0 && mu < 0.0, "ideal_particle_number: need beta > 0 and mu < 0");
  SumResult r = excited_number(beta, -beta * mu, lattice);
  r.value += bose_factor(-beta * mu);
  return r;
}

IdealGasState solve_mu0(double beta, double N, const MomentumLattice& lattice, double tol) {
  require(beta > 0.0 && std::isfinite(beta), "solve_mu0: beta must be positive");
  require(N >= 1.0, "solve_mu0: N must be >= 1");
  require(tol > 0.0, "solve_mu0: tolerance must be positive");

  // In t = -beta mu the particle number is strictly decreasing.
  const auto count = [&](double t) {
    SumResult r = excited_number(beta, t, lattice);
    r.value += bose_factor(t);
    return r;
  };

  double t_lo = std::log1p(1.0 / N);  // condensate alone already holds N
  double t_hi = 2.0 * t_lo;
  int guard = 0;
  while (count(t_hi).value > N) {
    t_lo = t_hi;
    t_hi *= 4.0;
    if (++guard > 200) throw SolverError("solve_mu0: could not bracket the chemical potential");
  }

  // Bisection in log t.
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(t_lo * t_hi);
    if (count(mid).value > N)
      t_lo = mid;
    else
      t_hi = mid;
    if (t_hi / t_lo - 1.0 < 1e-7) break;
  }

  // Newton polish in mu: dN/dmu = beta sum n(n+1).
  double t = std::sqrt(t_lo * t_hi);
  for (int it = 0; it < 3; ++it) {
    const double n0 = bose_factor(t);
    const double deriv = beta * (excited_derivative(beta, t, lattice) + n0 * (n0 + 1.0));
    const double mu = -t / beta;
    const double step = (count(t).value - N) / deriv;
    t = std::clamp(-beta * (mu - step), t_lo, t_hi);
  }

  const SumResult final_count = count(t);
  IdealGasState s;
  s.beta = beta;
  s.N = N;
  s.L = lattice.L();
  s.mu0 = -t / beta;
  s.N0 = bose_factor(t);
  s.rho0 = s.N0 / std::pow(s.L, 3);
  s.beta_c = critical_beta(N, s.L);
  s.residual = std::fabs(final_count.value - N) / N;
  s.tail_bound = final_count.tail_bound;
  if (s.tail_bound > tol * N) {
    std::ostringstream msg;
    msg << "solve_mu0: lattice tail bound " << s.tail_bound << " exceeds " << tol << "*N; increase p_max (now "
        << lattice.p_max() << ")";
    throw ResolutionError(msg.str());
  }
  if (s.residual > tol) {
    std::ostringstream msg;
    msg << "solve_mu0: residual " << s.residual << " above tolerance " << tol;
    throw SolverError(msg.str());
  }
  return s;
}

void free_energy_ideal(IdealGasState& s, const MomentumLattice& lattice, double tol) {
  require(s.mu0 < 0.0 && s.beta > 0.0, "free_energy_ideal: state holds no converged mu0");
  const double beta = s.beta;
  const double t = -beta * s.mu0;
  s.F0_bec = log1m_exp(t) / beta + s.mu0 * s.N0;
  // -ln(1 - e^{-x}) is positive and decreasing, as lattice_sum requires.
  const SumResult r = lattice_sum([beta, t](double p2) { return -log1m_exp(beta * p2 + t); }, lattice);
  if (r.tail_bound > tol * std::max(1.0, std::fabs(r.value))) {
    std::ostringstream msg;
    msg << "free_energy_ideal: tail bound " << r.tail_bound << " too large; increase p_max";
    throw ResolutionError(msg.str());
  }
  s.F0_plus = -r.value / beta + s.mu0 * (s.N - s.N0);
}

IdealGasState ideal_gas(double beta, double N, const MomentumLattice& lattice, double tol) {
  IdealGasState s = solve_mu0(beta, N, lattice, tol);
  free_energy_ideal(s, lattice, tol);
  return s;
}

}  // namespace bosegas

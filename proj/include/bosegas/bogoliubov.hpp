#pragma once

// Quadratic (Bogoliubov) theory of the excitations around the condensate at
// positive temperature: coefficients, dispersions, occupations, the ground
// state shift, the correction sum of the free energy bound and its
// thermodynamic-limit integral.

#include <functional>

#include "bosegas/ideal_gas.hpp"
#include "bosegas/lattice.hpp"

namespace bosegas {

/// u_p, v_p with u_p^2 - v_p^2 = 1. u = cosh(theta), v = -sinh(theta) with
/// theta = ln((p^2 - mu0 + 2 W rho0)/(p^2 - mu0)) / 4.
struct BogoCoeffs {
  double u = 1.0;
  double v = 0.0;
};

/// Throws ModelError when Wp < 0 or p^2 - mu0 <= 0.
BogoCoeffs bogo_coeffs(double p2, double mu0, double rho0, double Wp);

/// sqrt(p^2 - mu0) sqrt(p^2 - mu0 + 2 W rho0).
double dispersion(double p2, double mu0, double rho0, double Wp);

/// sqrt(p^2 - mu0) sqrt(p^2 - mu0 + 16 pi a_N rho0).
double dispersion_tilde(double p2, double mu0, double rho0, double a_N);

/// Diagonal occupation gamma(p) and the phase-free pairing alpha(p). The
/// pairing function carries a factor (z/|z|)^2 that cancels in every
/// assembled quantity.
struct Occupation {
  double gamma = 0.0;
  double alpha = 0.0;
};

/// B: thermal state of the diagonalized quadratic Hamiltonian.
/// I: free Bose factor, no pairing. Any other label gives zero.
Occupation occupations(double p2, double mu0, double rho0, double Wp, double beta, MomentumLabel label);

struct BogoliubovMode {
  double p2 = 0.0;
  double u = 1.0;
  double v = 0.0;
  double eps = 0.0;
  double eps_tilde = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
};

/// All per-mode quantities of a B momentum.
BogoliubovMode bogoliubov_mode(double p2, double mu0, double rho0, double Wp, double a_N, double beta);

/// Contribution of a pair {p, -p} to E0: -(p^2 - mu0 + rho0 W - eps) <= 0.
double ground_shift_pair(double p2, double mu0, double rho0, double Wp);

/// E0 = -(1/2) sum_{p in P_B} (p^2 - mu0 + rho0 W(p) - eps(p)).
/// W is evaluated once per shell; it must be radial.
double ground_shift(double mu0, double rho0, const std::function<double(double)>& W_of_p,
                    const MomentumLattice& lattice, const MomentumSets& sets);

struct CorrectionSum {
  double value = 0.0;       // -(1/2 beta) [lattice part + continuum estimate]
  double lattice_part = 0.0;
  double continuum = 0.0;   // -(1/2 beta) (L/2pi)^3 4pi int_{p_max}^inf p^2 (x - ln(1+x)) dp
  double tail_bound = 0.0;  // certified bound on the true remainder beyond p_max
};

/// -(1/2 beta) sum_{p != 0} [A/p^2 - ln(1 + A/p^2)], A = 16 pi a_N rho0.
CorrectionSum bogo_correction_sum(double beta, double a_N, double rho0, const MomentumLattice& lattice);

/// int_P^inf [A - p^2 ln(1 + A/p^2)] dp, closed form without cancellation.
double correction_continuum_integral(double A, double P);

struct GrandPotentialExpansion {
  double lhs = 0.0;           // beta^-1 sum_{P_B} ln(1 - e^{-beta eps~})
  double free_term = 0.0;     // beta^-1 sum_{P_B} ln(1 - e^{-beta (p^2 - mu0)})
  double number_term = 0.0;   // 8 pi a_N rho0 sum_{P_B} 1/(e^{beta(p^2-mu0)} - 1)
  double correction = 0.0;    // bogo_correction_sum over the whole lattice
  double rhs = 0.0;
  double gap = 0.0;           // rhs - lhs
  double envelope = 0.0;      // N0^2/N^2 [N^dB/L^2 + 1/(beta N^dB) + L^2/(beta^2 N0)], constant 1
};

/// Both sides of the expansion of the B-mode free energy in a_N.
GrandPotentialExpansion grand_potential_expansion(const IdealGasState& gas, double a_N,
                                                  const MomentumLattice& lattice, const MomentumSets& sets);

struct PhiBogDecomposition {
  double direct = 0.0;        // beta^-1 sum_{p != 0} ln(1 - e^{-beta eps~(p)})
  double free_term = 0.0;     // beta^-1 sum_{p != 0} ln(1 - e^{-beta (p^2 - mu0)})
  double interaction = 0.0;   // 8 pi a_N L^3 (rho - rho0) rho0
  double correction = 0.0;
  double recombined = 0.0;
  double residual = 0.0;      // direct - recombined
  double tail_bound = 0.0;
};

/// Grand potential of the full quadratic Hamiltonian and its three-term expansion.
PhiBogDecomposition phi_bog(const IdealGasState& gas, double a_N, const MomentumLattice& lattice);

struct LhyIntegral {
  double closed_form = 0.0;  // -(16 sqrt(pi)/(3 beta)) (a rho0)^{3/2}
  double quadrature = 0.0;
};

LhyIntegral lhy_integral(double beta, double a, double rho0);

/// Condensate number of the trial state for a given total: N - sum_{B u I} gamma(p).
double trial_condensate_number(const IdealGasState& gas, const std::function<double(double)>& W_of_p,
                               const MomentumLattice& lattice, const MomentumSets& sets);

}  // namespace bosegas

#pragma once

// Noninteracting Bose gas on the torus: critical temperature, chemical
// potential, condensate occupation and the two ideal free-energy pieces.

#include "bosegas/lattice.hpp"

namespace bosegas {

struct IdealGasState {
  double beta = 0.0;
  double N = 0.0;
  double L = 0.0;
  double mu0 = 0.0;      // < 0
  double N0 = 0.0;       // 1/(e^{-beta mu0} - 1)
  double rho0 = 0.0;     // N0 / L^3
  double beta_c = 0.0;
  double F0_bec = 0.0;
  double F0_plus = 0.0;
  double residual = 0.0;   // |sum - N| / N at the returned mu0
  double tail_bound = 0.0; // certified tail of the particle-number sum
};

/// (1/4pi) (N / (L^3 zeta(3/2)))^{-2/3}.
double critical_beta(double N, double L);

/// Truncation radius with beta p_max^2 >= 46, never below two lattice units.
double default_p_max(double beta, double L);

/// Expected particle number sum_{p in lattice} 1/(e^{beta(p^2 - mu)} - 1),
/// p = 0 included, with its certified tail.
SumResult ideal_particle_number(double beta, double mu, const MomentumLattice& lattice);

/// Solves the particle-number equation for mu0 (bisection on a log scale of
/// -beta mu, then Newton polish) and fills N0, rho0, beta_c. Throws
/// ResolutionError when the lattice tail exceeds tol * N.
IdealGasState solve_mu0(double beta, double N, const MomentumLattice& lattice, double tol = 1e-10);

/// Fills F0_bec and F0_plus of a solved state.
void free_energy_ideal(IdealGasState& state, const MomentumLattice& lattice, double tol = 1e-10);

/// solve_mu0 followed by free_energy_ideal.
IdealGasState ideal_gas(double beta, double N, const MomentumLattice& lattice, double tol = 1e-10);

}  // namespace bosegas

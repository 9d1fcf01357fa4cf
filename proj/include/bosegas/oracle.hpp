#pragma once

// Brute-force references for the closed forms: exact diagonalization of one
// (p, -p) Bogoliubov pair in a truncated Fock space, and the Wick assembly of
// the two-particle density matrix of the product state without correlations.
// Adaptive quadrature lives in quadrature.hpp.

#include <complex>
#include <functional>
#include <vector>

#include "bosegas/lattice.hpp"
#include "bosegas/quadrature.hpp"

namespace bosegas::oracle {

struct FockPairResult {
  double gamma = 0.0;          // <a_p^* a_p>
  double alpha = 0.0;          // <a_p a_{-p}>, coherent-state phase fixed to z real
  double E0_pair = 0.0;        // lowest eigenvalue
  std::vector<double> spectrum_head;  // lowest few eigenvalues, ascending
  double tail_estimate = 0.0;  // truncation error estimate for gamma and alpha
  bool conclusive = true;      // false when tail_estimate exceeds the tolerance
};

/// Diagonalizes A (n_p + n_{-p}) + B (a_p^* a_{-p}^* + a_p a_{-p}) with
/// A = p^2 - mu0 + rho0 W, B = rho0 W on occupation numbers <= n_max. The
/// Hamiltonian conserves n_p - n_{-p}, so it is solved block by block.
/// Requires 10 <= n_max <= 63 and W >= 0.
FockPairResult truncated_fock_pair(double p2, double mu0, double rho0, double Wp, double beta, int n_max,
                                   double tol = 1e-9, int head = 6);

struct WickInputs {
  std::function<double(const LatticePoint&)> gamma;                // 0 at p = 0
  std::function<std::complex<double>(const LatticePoint&)> alpha;  // pairing, 0 at p = 0
  double M0 = 0.0;             // <|z|^2>
  double fourth_moment = 0.0;  // <|z|^4>
};

/// tr[a_{u1}^* a_{v1}^* a_{u2} a_{v2} Gamma_0] for the condensate-times-quasi-free state.
std::complex<double> wick_2pdm(const LatticePoint& u1, const LatticePoint& v1, const LatticePoint& u2,
                               const LatticePoint& v2, const WickInputs& in);

}  // namespace bosegas::oracle

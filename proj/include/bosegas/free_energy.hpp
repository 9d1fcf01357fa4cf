#pragma once

// Assembly of the free-energy upper bound
//   F0_plus + 8 pi a_N N^2/L^3 + min{F^BEC - 8 pi a_N N0^2/L^3, F0_bec} + correction
// and of its simplified forms away from the critical point.

#include <string_view>

#include "bosegas/lattice.hpp"
#include "bosegas/scattering.hpp"

namespace bosegas {

struct Tolerances {
  double sum_tail = 1e-10;       // relative tail of the ideal-gas lattice sums
  double root_residual = 1e-10;  // relative residual of the mu0 and condensate inversions
  double quadrature = 1e-9;      // relative tolerance of the oracle quadratures
};

struct GasParameters {
  double N = 0.0;
  double L = 1.0;
  double kappa = 0.0;  // exactly one of kappa, beta is positive
  double beta = 0.0;
  PotentialSpec potential;
  double ell = 0.0;  // 0 selects L/4
  double delta_B = 1.0 / 12.0;
  double delta_L = 1.0 / 12.0;
  double delta_H = 5.0 / 12.0;
  Tolerances tol;

  /// Throws ContractError on an inconsistent set.
  void validate() const;
  double resolved_beta() const;
  double resolved_kappa() const;
  double resolved_ell() const;
  MomentumSets sets() const;
};

/// Scattering solution for the parameters.
ScatteringSolution solve_scattering(const GasParameters& params);

enum class Branch { Interacting, Free };
enum class BoundForm { Theorem, AboveCritical, BelowCritical };

std::string_view to_string(Branch b);
std::string_view to_string(BoundForm f);

struct FreeEnergyBreakdown {
  double kappa = 0.0, beta = 0.0, beta_c = 0.0;
  double N = 0.0, L = 0.0;
  double mu0 = 0.0, N0 = 0.0, rho0 = 0.0;
  double a = 0.0, a_N = 0.0;

  double F0_plus = 0.0;
  double F0_bec = 0.0;
  double Fbec = 0.0;               // F^BEC(beta, N0, L, a_N)
  double interaction = 0.0;        // 8 pi a_N L^3 rho^2
  double branch_interacting = 0.0; // F^BEC - 8 pi a_N L^3 rho0^2
  double branch_free = 0.0;        // F0_bec
  Branch branch = Branch::Free;
  double condensate_term = 0.0;    // the term entering total in place of the min
  double bogo_correction = 0.0;
  double bogo_tail_bound = 0.0;
  double total = 0.0;
  double error_scale = 0.0;        // size of the remainder, not added
  BoundForm form = BoundForm::Theorem;
  bool near_critical = false;      // |kappa - 1| < 0.05
};

/// The full bound with the condensate branch chosen by the true minimum.
FreeEnergyBreakdown upper_bound(const GasParameters& params, const ScatteringSolution& sol);

/// Simplified bound: kappa > 1 uses the logarithmic fluctuation term, kappa < 1
/// the ideal free energy plus the mean-field term. Near kappa = 1 the full
/// bound is returned with near_critical set.
FreeEnergyBreakdown corollary_bound(const GasParameters& params, const ScatteringSolution& sol);

}  // namespace bosegas

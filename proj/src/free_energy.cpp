#include "bosegas/free_energy.hpp"

#include <cmath>
#include <sstream>

#include "bosegas/bogoliubov.hpp"
#include "bosegas/condensate.hpp"
#include "bosegas/error.hpp"
#include "bosegas/ideal_gas.hpp"
#include "bosegas/special.hpp"

namespace bosegas {

namespace {

constexpr double kCriticalWindow = 0.05;

void check_residual(const char* what, double residual, double tol) {
  if (residual <= tol) return;
  std::ostringstream msg;
  msg << what << ": relative residual " << residual << " exceeds tol.root_residual " << tol;
  throw SolverError(msg.str());
}

// Everything shared by the theorem and corollary forms.
FreeEnergyBreakdown base(const GasParameters& p, const ScatteringSolution& sol) {
  p.validate();
  require(sol.N == p.N, "free energy: scattering solution belongs to a different N");
  FreeEnergyBreakdown b;
  b.N = p.N;
  b.L = p.L;
  b.beta = p.resolved_beta();
  b.beta_c = critical_beta(p.N, p.L);
  b.kappa = b.beta / b.beta_c;
  b.a = sol.a;
  b.a_N = sol.a_N;

  const MomentumLattice lattice(p.L, default_p_max(b.beta, p.L));
  const IdealGasState gas = ideal_gas(b.beta, p.N, lattice, p.tol.sum_tail);
  check_residual("mu0", gas.residual, p.tol.root_residual);
  b.mu0 = gas.mu0;
  b.N0 = gas.N0;
  b.rho0 = gas.rho0;
  b.F0_plus = gas.F0_plus;
  b.F0_bec = gas.F0_bec;

  const double L3 = p.L * p.L * p.L;
  b.interaction = 8.0 * kPi * b.a_N * p.N * p.N / L3;

  const CondensateModel m = solve_condensate_mu(b.beta, condensate_coupling(b.a_N, p.L), b.N0);
  check_residual("condensate mu", m.residual, p.tol.root_residual);
  b.Fbec = fbec(m);
  b.branch_interacting = b.Fbec - 8.0 * kPi * b.a_N * b.N0 * b.N0 / L3;
  b.branch_free = b.F0_bec;

  const CorrectionSum c = bogo_correction_sum(b.beta, b.a_N, b.rho0, lattice);
  b.bogo_correction = c.value;
  b.bogo_tail_bound = c.tail_bound;
  b.near_critical = std::fabs(b.kappa - 1.0) < kCriticalWindow;
  return b;
}

}  // namespace

void GasParameters::validate() const {
  require(std::isfinite(N) && N >= 1.0, "parameters: N must be >= 1");
  require(std::isfinite(L) && L > 0.0, "parameters: L must be positive");
  require((kappa > 0.0) != (beta > 0.0), "parameters: exactly one of kappa, beta must be given");
  require(std::isfinite(kappa) && std::isfinite(beta) && kappa >= 0.0 && beta >= 0.0,
          "parameters: kappa and beta must be finite and nonnegative");
  require(ell >= 0.0 && resolved_ell() < L / 2.0, "parameters: ell must lie in (0, L/2)");
  require(tol.sum_tail > 0.0 && tol.root_residual > 0.0 && tol.quadrature > 0.0,
          "parameters: tolerances must be positive");
  potential.validate();
  sets().validate();
}

double GasParameters::resolved_beta() const { return beta > 0.0 ? beta : kappa * critical_beta(N, L); }
double GasParameters::resolved_kappa() const { return kappa > 0.0 ? kappa : beta / critical_beta(N, L); }
double GasParameters::resolved_ell() const { return ell > 0.0 ? ell : L / 4.0; }

MomentumSets GasParameters::sets() const {
  MomentumSets s;
  s.delta_B = delta_B;
  s.delta_L = delta_L;
  s.delta_H = delta_H;
  s.N = N;
  s.L = L;
  return s;
}

ScatteringSolution solve_scattering(const GasParameters& params) {
  params.validate();
  return solve_neumann(params.potential, params.resolved_ell(), params.N);
}

std::string_view to_string(Branch b) { return b == Branch::Interacting ? "interacting" : "free"; }

std::string_view to_string(BoundForm f) {
  switch (f) {
    case BoundForm::Theorem: return "theorem";
    case BoundForm::AboveCritical: return "above_critical";
    case BoundForm::BelowCritical: return "below_critical";
  }
  return "unknown";
}

FreeEnergyBreakdown upper_bound(const GasParameters& params, const ScatteringSolution& sol) {
  FreeEnergyBreakdown b = base(params, sol);
  b.form = BoundForm::Theorem;
  // Ties go to the free branch; at a_N = 0 the two differ only by rounding.
  if (b.branch_interacting < b.branch_free) {
    b.branch = Branch::Interacting;
    b.condensate_term = b.branch_interacting;
  } else {
    b.branch = Branch::Free;
    b.condensate_term = b.branch_free;
  }
  b.total = b.F0_plus + b.interaction + b.condensate_term + b.bogo_correction;
  b.error_scale = std::pow(b.N, 7.0 / 12.0) / (b.L * b.L);
  return b;
}

FreeEnergyBreakdown corollary_bound(const GasParameters& params, const ScatteringSolution& sol) {
  FreeEnergyBreakdown b = base(params, sol);
  if (b.near_critical || (b.kappa > 1.0 && b.a_N == 0.0)) return upper_bound(params, sol);
  const double L3 = b.L * b.L * b.L;
  if (b.kappa > 1.0) {
    b.form = BoundForm::AboveCritical;
    b.branch = Branch::Interacting;
    b.condensate_term = -4.0 * kPi * b.a_N * b.N0 * b.N0 / L3 + std::log(4.0 * b.beta * b.a_N / L3) / (2.0 * b.beta);
    b.total = b.F0_plus + b.interaction + b.condensate_term + b.bogo_correction;
    b.error_scale = std::pow(b.N, 7.0 / 12.0) / (b.L * b.L);
  } else {
    b.form = BoundForm::BelowCritical;
    b.branch = Branch::Free;
    b.condensate_term = b.F0_bec;
    b.bogo_correction = 0.0;
    b.bogo_tail_bound = 0.0;
    b.total = b.F0_plus + b.F0_bec + b.interaction;
    b.error_scale = std::sqrt(b.N) / (b.L * b.L);
  }
  return b;
}

}  // namespace bosegas

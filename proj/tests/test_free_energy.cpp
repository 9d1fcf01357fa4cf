#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "bosegas/error.hpp"
#include "bosegas/free_energy.hpp"
#include "bosegas/ideal_gas.hpp"
#include "bosegas/special.hpp"

using namespace bosegas;

namespace {

GasParameters params(double N, double kappa, double v0 = 2.0) {
  GasParameters p;
  p.N = N;
  p.kappa = kappa;
  p.potential = PotentialSpec::square_well(v0, 1.0);
  p.ell = 0.25;
  return p;
}

// F0 by direct enumeration of integer vectors, ordered independently of the lattice shells.
double free_energy_direct(double beta, double mu0, double N, double L) {
  const double u = 2.0 * kPi / L;
  const int K = static_cast<int>(std::ceil(std::sqrt(60.0 / beta) / u)) + 1;
  double s = 0.0;
  for (int i = -K; i <= K; ++i)
    for (int j = -K; j <= K; ++j)
      for (int k = -K; k <= K; ++k) {
        const double p2 = u * u * (double(i) * i + double(j) * j + double(k) * k);
        s += std::log1p(-std::exp(-beta * (p2 - mu0)));
      }
  return s / beta + mu0 * N;
}

}  // namespace

TEST(FreeEnergy, ZeroPotentialIsIdealGas) {
  auto p = params(2000.0, 2.0, 0.0);
  const auto sol = solve_scattering(p);
  const auto b = upper_bound(p, sol);
  EXPECT_EQ(b.interaction, 0.0);
  EXPECT_EQ(b.bogo_correction, 0.0);
  EXPECT_EQ(b.branch, Branch::Free);
  EXPECT_EQ(b.total, b.F0_plus + b.F0_bec);
  const double direct = free_energy_direct(b.beta, b.mu0, b.N, b.L);
  EXPECT_NEAR(b.total, direct, 1e-9 * std::fabs(direct));
  // The interacting branch degenerates to the exact exponential law and loses.
  EXPECT_GE(b.branch_interacting, b.branch_free);
}

TEST(FreeEnergy, ZeroPotentialBelowCritical) {
  auto p = params(2000.0, 0.5, 0.0);
  const auto b = upper_bound(p, solve_scattering(p));
  EXPECT_EQ(b.total, b.F0_plus + b.F0_bec);
  const double direct = free_energy_direct(b.beta, b.mu0, b.N, b.L);
  EXPECT_NEAR(b.total, direct, 1e-9 * std::fabs(direct));
}

TEST(FreeEnergy, InteractionTermReference) {
  auto p = params(1e6, 2.0);
  const auto b = upper_bound(p, solve_scattering(p));
  const double a = 1.0 - std::tanh(1.0);
  EXPECT_NEAR(b.a, a, 1e-9);
  EXPECT_NEAR(b.interaction, 8.0 * kPi * a * 1e6, 1e-6 * 5.99e6);
  EXPECT_NEAR(b.interaction, 5.99e6, 0.01e6);
}

TEST(FreeEnergy, AssemblyIsExactSum) {
  for (double kappa : {0.5, 1.0, 2.0}) {
    auto p = params(1e5, kappa);
    const auto b = upper_bound(p, solve_scattering(p));
    const double m = std::min(b.branch_interacting, b.branch_free);
    EXPECT_EQ(b.condensate_term, m);
    EXPECT_EQ(b.total, b.F0_plus + b.interaction + m + b.bogo_correction);
    EXPECT_LE(b.bogo_correction, 0.0);
    EXPECT_EQ(b.error_scale, std::pow(1e5, 7.0 / 12.0));
  }
}

TEST(FreeEnergy, BranchSelection) {
  for (double kappa : {1.5, 2.0, 4.0}) {
    auto p = params(1e6, kappa);
    EXPECT_EQ(upper_bound(p, solve_scattering(p)).branch, Branch::Interacting) << kappa;
  }
  for (double kappa : {0.3, 0.5, 0.8}) {
    auto p = params(1e6, kappa);
    EXPECT_EQ(upper_bound(p, solve_scattering(p)).branch, Branch::Free) << kappa;
  }
}

TEST(FreeEnergy, Hierarchy) {
  auto p = params(1e6, 2.0);
  const auto b = upper_bound(p, solve_scattering(p));
  EXPECT_GT(std::fabs(b.F0_plus), b.interaction);
  EXPECT_GT(b.interaction, std::fabs(b.bogo_correction));
  // N^{5/3} : N : N^{2/3} up to O(1) constants.
  EXPECT_GT(std::fabs(b.F0_plus) / b.interaction, 1e1);
  EXPECT_GT(b.interaction / std::fabs(b.bogo_correction), 1e1);
}

TEST(FreeEnergy, MonotoneInScatteringLength) {
  for (double kappa : {0.5, 2.0}) {
    double prev = -INFINITY, prev_a = -1.0;
    for (double v0 : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
      auto p = params(1e5, kappa, v0);
      const auto b = upper_bound(p, solve_scattering(p));
      EXPECT_GT(b.a, prev_a);
      EXPECT_GE(b.total, prev) << "kappa " << kappa << " v0 " << v0;
      prev = b.total;
      prev_a = b.a;
    }
  }
}

TEST(Corollary, BelowCritical) {
  auto p = params(1e6, 0.5);
  const auto sol = solve_scattering(p);
  const auto c = corollary_bound(p, sol);
  EXPECT_EQ(c.form, BoundForm::BelowCritical);
  EXPECT_EQ(c.total, c.F0_plus + c.F0_bec + c.interaction);
  EXPECT_NEAR(c.interaction, 8.0 * kPi * sol.a * 1e6, 1e-9 * c.interaction);
  EXPECT_EQ(c.error_scale, 1e3);
  // Below the transition the theorem's min picks the same ideal branch.
  const auto t = upper_bound(p, sol);
  EXPECT_LE(std::fabs(t.total - c.total), std::fabs(t.bogo_correction) + 1e-9 * std::fabs(t.total));
}

TEST(Corollary, AboveCriticalAgreesWithTheorem) {
  for (double N : {1e5, 1e6, 1e7}) {
    auto p = params(N, 2.0);
    const auto sol = solve_scattering(p);
    const auto c = corollary_bound(p, sol);
    const auto t = upper_bound(p, sol);
    EXPECT_EQ(c.form, BoundForm::AboveCritical);
    EXPECT_EQ(c.bogo_correction, t.bogo_correction);
    EXPECT_LT(std::fabs(c.total - t.total), t.error_scale) << N;
  }
}

TEST(Corollary, LargeKappaCoefficient) {
  // (interaction + condensate term without the log) / (4 pi a_N L^3 rho^2) = 2 - (N0/N)^2 -> 1.
  double prev = INFINITY;
  for (double kappa : {5.0, 10.0, 50.0}) {
    auto p = params(1e6, kappa);
    const auto c = corollary_bound(p, solve_scattering(p));
    const double mf = c.interaction + c.condensate_term - std::log(4.0 * c.beta * c.a_N) / (2.0 * c.beta);
    const double coef = mf / (4.0 * kPi * c.a_N * c.N * c.N);
    EXPECT_LT(coef, prev);
    prev = coef;
    if (kappa == 50.0) EXPECT_NEAR(coef, 1.0, 0.01);
  }
}

TEST(Corollary, NearCriticalRouted) {
  for (double kappa : {0.97, 1.0, 1.03}) {
    auto p = params(1e5, kappa);
    const auto c = corollary_bound(p, solve_scattering(p));
    EXPECT_TRUE(c.near_critical);
    EXPECT_EQ(c.form, BoundForm::Theorem);
  }
}

TEST(Parameters, Validation) {
  auto p = params(1e5, 2.0);
  p.beta = 1.0;
  EXPECT_THROW(p.validate(), ContractError);
  p = params(1e5, 2.0);
  p.ell = 0.5;
  EXPECT_THROW(p.validate(), ContractError);
  p = params(1e5, 2.0);
  p.tol.quadrature = 0.0;
  EXPECT_THROW(p.validate(), ContractError);
  p = params(1e5, 2.0);
  p.ell = 0.0;
  EXPECT_EQ(p.resolved_ell(), 0.25);
  EXPECT_NO_THROW(p.validate());
}

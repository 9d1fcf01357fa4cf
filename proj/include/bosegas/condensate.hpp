#pragma once

// Effective single-mode theory of the condensate: the Gibbs density
// g(z) ~ exp(-beta (h |z|^4 - mu |z|^2)) with coupling h = 4 pi a_N / L^3.
// In x = |z|^2 and t = x sqrt(beta h) every integral reduces to
//   I_k(eta) = int_0^inf t^k exp(-(t - eta)^2) dt,   eta = mu sqrt(beta / (4h)).

#include <vector>

namespace bosegas {

/// sqrt(pi) I_1/I_0 = (1 + sqrt(pi) eta e^{eta^2} erfc(-eta)) / (e^{eta^2} erfc(-eta)).
double upsilon(double eta);

/// I_1(eta)/I_0(eta), the mean of t.
double mean_t(double eta);

/// Ratios I_k/I_0 for k = 0..kmax.
std::vector<double> moment_ratios(double eta, int kmax);

/// 4 pi a_N / L^3.
double condensate_coupling(double a_N, double L);

struct CondensateModel {
  double beta = 0.0;
  double h = 0.0;
  double mu = 0.0;
  double M = 0.0;
  double eta_scaled = 0.0;  // mu sqrt(beta/(4h)); 0 on the exact branch
  double residual = 0.0;  // |<x> - M| / M after inversion
  bool exact_free = false;  // h = 0: exponential distribution
};

/// Solves <|z|^2> = M for mu. h = 0 selects the exact exponential branch.
CondensateModel solve_condensate_mu(double beta, double h, double M);

/// <|z|^{2k}>.
double moment(int k, const CondensateModel& model);

/// Var(|z|^2).
double condensate_variance(const CondensateModel& model);

/// ln int_C exp(-beta (h|z|^4 - mu|z|^2)) dz with dz = dx dy / pi.
double log_partition(const CondensateModel& model);

/// -ln Z / beta + mu M.
double fbec(const CondensateModel& model);

/// F^BEC(beta, M, L, a_N).
double fbec(double beta, double M, double L, double a_N);

/// Classical entropy -int g ln g dz.
double condensate_entropy(const CondensateModel& model);

struct FluctuationEnergy {
  double lhs;        // h Var(|z|^2) - S/beta
  double rhs_4;      // ln(4 beta a_N / L^3) / (2 beta)
  double rhs_16;     // ln(16 beta a_N / L^3) / (2 beta)
  bool in_regime;    // M >= N^{5/6}
};

/// Free energy of the condensate number fluctuations and both candidate limits.
FluctuationEnergy fluctuation_free_energy(const CondensateModel& model, double N, double a_N, double L);

/// ln of int (1+|z|^2) 1(|z|^2 >= X) g / int (1+|z|^2) g.
double log_tail_fraction(const CondensateModel& model, double X);

}  // namespace bosegas

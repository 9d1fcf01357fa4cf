#pragma once

// Zero-energy scattering in a ball with Neumann boundary conditions.
// The ODE is solved in scaled coordinates s = N|x| where the potential has
// O(1) range; box-scale quantities (lambda_N, eta_p, W(p)) are derived from it.

#include <string>
#include <vector>

namespace bosegas {

struct PotentialSpec {
  enum class Kind { SquareWell, Tabulated };

  Kind kind = Kind::SquareWell;
  double v0 = 0.0;
  double R = 1.0;
  std::vector<double> r;  // tabulated grid, strictly increasing, r[0] >= 0
  std::vector<double> v;  // tabulated values, v >= 0

  static PotentialSpec square_well(double v0, double R);
  static PotentialSpec tabulated(std::vector<double> r, std::vector<double> v);
  /// Two-column CSV (r, v). Lines starting with '#' and a non-numeric header are skipped.
  static PotentialSpec from_file(const std::string& path);

  /// Throws ContractError for negative values or a malformed table.
  void validate() const;
  bool is_zero() const;
  /// Radius beyond which v vanishes.
  double support() const;
  /// v(r); tabulated values are interpolated linearly and vanish past the table.
  double operator()(double r) const;
};

/// Scattering length of v from the zero-energy solution u(r) = r - a outside the support.
double scattering_length(const PotentialSpec& v);

struct ScatteringSolution {
  double a = 0.0;           // scattering length of v
  double a_N = 0.0;         // a / N
  double lambda_ell = 0.0;  // scaled Neumann eigenvalue
  double lambda_N = 0.0;    // N^2 lambda_ell
  double ell = 0.0;
  double N = 0.0;
  double R_support = 0.0;   // support radius of v (scaled units)
  double R_ball = 0.0;      // N ell

  // Interior radial grid on [0, R_support]: u = s f, normalized so f(R_ball) = 1.
  std::vector<double> s;
  std::vector<double> u;
  std::vector<double> du;
  double U = 0.0, dU = 0.0;  // u, u' at R_support
  double c = 1.0;            // u(R_ball) / R_ball, the normalization

  /// Scaled profile f(s), equal to 1 for s >= R_ball.
  double f(double s) const;
  /// 1 - f(s) without cancellation in the exterior.
  double one_minus_f(double s) const;
  /// Box-scale profile f_N(x) = f(N|x|).
  double f_N(double x) const { return f(N * x); }

  /// eta_p = -(1 - f_N)^(p), p = |p|.
  double eta(double p) const;
  /// W(p) = (v_N f_N)^(p) = v_N * f_N convolution.
  double W(double p) const;
  /// Fourier coefficient of the ball of radius ell.
  double ball_hat(double p) const;

  struct Residual {
    double value;  // p^2 eta_p + W(p)/2 - lambda_N (1_ball^(p) + eta_p)
    double scale;  // largest magnitude among the terms
  };
  Residual scattering_residual(double p) const;

 private:
  double u_exterior(double s) const;
  PotentialSpec v_;
  friend ScatteringSolution solve_neumann(const PotentialSpec&, double, double);
};

/// Ground state of (-Delta + v/2) f = lambda f on |x| <= N ell with Neumann
/// conditions and f = 1 on the boundary. Throws SolverError when the
/// eigenvalue bracket cannot be established.
ScatteringSolution solve_neumann(const PotentialSpec& v, double ell, double N);

}  // namespace bosegas

#include "bosegas/scattering.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bosegas/error.hpp"
#include "bosegas/quadrature.hpp"
#include "bosegas/special.hpp"

namespace bosegas {

PotentialSpec PotentialSpec::square_well(double v0, double R) {
  PotentialSpec p;
  p.kind = Kind::SquareWell;
  p.v0 = v0;
  p.R = R;
  p.validate();
  return p;
}

PotentialSpec PotentialSpec::tabulated(std::vector<double> r, std::vector<double> v) {
  PotentialSpec p;
  p.kind = Kind::Tabulated;
  p.r = std::move(r);
  p.v = std::move(v);
  p.validate();
  return p;
}

PotentialSpec PotentialSpec::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("potential.file: cannot open '" + path + "'");
  std::vector<double> r, v;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a = 0.0, b = 0.0;
    if (!(ls >> a >> b)) {
      if (r.empty()) continue;  // header row
      throw ConfigError("potential.file: malformed line " + std::to_string(lineno) + " in '" + path + "'");
    }
    r.push_back(a);
    v.push_back(b);
  }
  if (r.size() < 2) throw ConfigError("potential.file: need at least two rows in '" + path + "'");
  return tabulated(std::move(r), std::move(v));
}

void PotentialSpec::validate() const {
  if (kind == Kind::SquareWell) {
    require(v0 >= 0.0 && std::isfinite(v0), "potential: square_well needs v0 >= 0");
    require(R > 0.0 && std::isfinite(R), "potential: square_well needs R > 0");
    return;
  }
  require(r.size() == v.size() && r.size() >= 2, "potential: tabulated grid needs matching r, v columns");
  require(r[0] >= 0.0, "potential: tabulated radii must be nonnegative");
  for (std::size_t i = 0; i < r.size(); ++i) {
    require(std::isfinite(v[i]) && v[i] >= 0.0, "potential: negative or non-finite sample at r=" + std::to_string(r[i]));
    if (i > 0) require(r[i] > r[i - 1], "potential: tabulated radii must increase strictly");
  }
}

bool PotentialSpec::is_zero() const {
  if (kind == Kind::SquareWell) return v0 == 0.0;
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

double PotentialSpec::support() const {
  if (kind == Kind::SquareWell) return R;
  for (std::size_t i = v.size(); i-- > 0;)
    if (v[i] > 0.0) return i + 1 < r.size() ? r[i + 1] : r[i];
  return r.front();
}

double PotentialSpec::operator()(double x) const {
  if (kind == Kind::SquareWell) return x <= R ? v0 : 0.0;
  if (x >= r.back()) return 0.0;
  if (x <= r.front()) return v.front();
  const auto it = std::upper_bound(r.begin(), r.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - r.begin());
  const double t = (x - r[j - 1]) / (r[j] - r[j - 1]);
  return v[j - 1] + t * (v[j] - v[j - 1]);
}

namespace {

constexpr int kInteriorSteps = 4000;

struct Shot {
  double U, dU;
  std::vector<double> s, u, du;
};

// RK4 for u'' = (v/2 - lambda) u on [0, Rv] with u(0) = 0, u'(0) = 1.
Shot shoot(const PotentialSpec& v, double Rv, double lambda, bool keep) {
  const int n = kInteriorSteps;
  const double h = Rv / n;
  double y0 = 0.0, y1 = 1.0;
  Shot out;
  if (keep) {
    out.s.reserve(n + 1);
    out.u.reserve(n + 1);
    out.du.reserve(n + 1);
    out.s.push_back(0.0);
    out.u.push_back(y0);
    out.du.push_back(y1);
  }
  const auto acc = [&](double s, double u) { return (0.5 * v(s) - lambda) * u; };
  for (int i = 0; i < n; ++i) {
    const double s = i * h;
    // Evaluate the potential just inside each node so a step at Rv counts as interior.
    const double sa = s, sm = s + 0.5 * h, sb = std::min(s + h, Rv * (1.0 - 1e-15));
    const double k1u = y1, k1v = acc(sa, y0);
    const double k2u = y1 + 0.5 * h * k1v, k2v = acc(sm, y0 + 0.5 * h * k1u);
    const double k3u = y1 + 0.5 * h * k2v, k3v = acc(sm, y0 + 0.5 * h * k2u);
    const double k4u = y1 + h * k3v, k4v = acc(sb, y0 + h * k3u);
    y0 += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
    y1 += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    if (keep) {
      out.s.push_back((i + 1) * h);
      out.u.push_back(y0);
      out.du.push_back(y1);
    }
  }
  out.U = y0;
  out.dU = y1;
  return out;
}

// Exterior solution at distance x past the support: U cos(kx) + U' sin(kx)/k.
long double ext_u(long double U, long double dU, long double k, long double x) {
  const long double kx = k * x;
  const long double sinc = std::fabs(kx) < 1e-6L ? 1.0L - kx * kx / 6.0L : std::sin(kx) / kx;
  return U * std::cos(kx) + dU * x * sinc;
}

long double ext_du(long double U, long double dU, long double k, long double x) {
  const long double kx = k * x;
  return -U * k * std::sin(kx) + dU * std::cos(kx);
}

// u(s) - [U + U' x]: the O((kx)^2) part of the exterior solution.
long double ext_delta(long double U, long double dU, long double k, long double x) {
  const long double kx = k * x;
  const long double h = std::sin(0.5L * kx);
  long double sinc_m1;
  if (std::fabs(kx) < 1e-2L) {
    const long double t = kx * kx;
    sinc_m1 = -t / 6.0L + t * t / 120.0L - t * t * t / 5040.0L;
  } else {
    sinc_m1 = std::sin(kx) / kx - 1.0L;
  }
  return -2.0L * U * h * h + dU * x * sinc_m1;
}

double j0(double x) {
  if (std::fabs(x) < 1e-3) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// Composite Simpson over the uniform interior grid.
template <class F>
double simpson(const std::vector<double>& s, F&& g) {
  const std::size_t n = s.size() - 1;
  const double h = s[1] - s[0];
  double acc = g(0) + g(n);
  for (std::size_t i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * g(i);
  return acc * h / 3.0;
}

}  // namespace

double scattering_length(const PotentialSpec& v) {
  v.validate();
  if (v.is_zero()) return 0.0;
  const double Rv = v.support();
  const Shot sh = shoot(v, Rv, 0.0, false);
  return Rv - sh.U / sh.dU;
}

ScatteringSolution solve_neumann(const PotentialSpec& v, double ell, double N) {
  v.validate();
  require(ell > 0.0 && std::isfinite(ell), "solve_neumann: ell must be positive");
  require(N >= 1.0, "solve_neumann: N must be >= 1");
  ScatteringSolution sol;
  sol.v_ = v;
  sol.ell = ell;
  sol.N = N;
  sol.R_ball = N * ell;
  sol.R_support = v.support();
  require(sol.R_support < sol.R_ball, "solve_neumann: support of v_N must lie inside the ball of radius ell");

  if (v.is_zero()) {
    const int n = kInteriorSteps;
    for (int i = 0; i <= n; ++i) {
      const double s = sol.R_support * i / n;
      sol.s.push_back(s);
      sol.u.push_back(s);
      sol.du.push_back(1.0);
    }
    sol.U = sol.R_support;
    sol.dU = 1.0;
    sol.c = 1.0;
    return sol;
  }

  sol.a = scattering_length(v);
  sol.a_N = sol.a / N;
  const double Rb = sol.R_ball, Rv = sol.R_support;

  // Neumann condition R u'(R) = u(R), positive at lambda = 0 (equals U' a).
  const auto phi = [&](double lambda) {
    const Shot sh = shoot(v, Rv, lambda, false);
    const long double k = std::sqrt(static_cast<long double>(lambda));
    const long double x = Rb - Rv;
    const long double val = Rb * ext_du(sh.U, sh.dU, k, x) - ext_u(sh.U, sh.dU, k, x);
    return static_cast<double>(val / sh.dU);
  };
  double lo = 0.0;
  double hi = 4.0 * 3.0 * sol.a / (Rb * Rb * Rb);
  double f_lo = phi(lo), f_hi = phi(hi);
  int guard = 0;
  while (f_hi > 0.0) {
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    f_hi = phi(hi);
    if (++guard > 60) throw SolverError("solve_neumann: could not bracket the Neumann eigenvalue");
  }
  if (!(f_lo > 0.0)) throw SolverError("solve_neumann: Neumann function not positive at the lower bracket");
  std::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(phi, lo, hi, f_lo, f_hi,
                                                       boost::math::tools::eps_tolerance<double>(50), iters);
  if (iters >= 200) throw SolverError("solve_neumann: eigenvalue iteration did not converge");
  sol.lambda_ell = 0.5 * (root.first + root.second);
  sol.lambda_N = N * N * sol.lambda_ell;

  Shot sh = shoot(v, Rv, sol.lambda_ell, true);
  sol.U = sh.U;
  sol.dU = sh.dU;
  sol.s = std::move(sh.s);
  sol.u = std::move(sh.u);
  sol.du = std::move(sh.du);
  sol.c = static_cast<double>(ext_u(sol.U, sol.dU, std::sqrt(static_cast<long double>(sol.lambda_ell)), Rb - Rv) / Rb);
  return sol;
}

double ScatteringSolution::u_exterior(double s) const {
  return static_cast<double>(ext_u(U, dU, std::sqrt(static_cast<long double>(lambda_ell)), s - R_support));
}

double ScatteringSolution::one_minus_f(double x) const {
  if (a == 0.0 || x >= R_ball) return 0.0;
  if (x >= R_support) {
    // c s - u(s) = U' a_l (R - s)/R + s delta(R)/R - delta(s) with a_l = R_support - U/U'.
    const long double k = std::sqrt(static_cast<long double>(lambda_ell));
    const long double Rb = R_ball, Rv = R_support, xs = x;
    const long double a_l = Rv - static_cast<long double>(U) / dU;
    const long double num = dU * a_l * (Rb - xs) / Rb + xs * ext_delta(U, dU, k, Rb - Rv) / Rb -
                            ext_delta(U, dU, k, xs - Rv);
    return static_cast<double>(num / (static_cast<long double>(c) * xs));
  }
  return 1.0 - f(x);
}

double ScatteringSolution::f(double x) const {
  if (a == 0.0 || x >= R_ball) return 1.0;
  if (x >= R_support) return 1.0 - one_minus_f(x);
  if (x <= 0.0) return du.front() / c;
  // Cubic Hermite interpolation of u on the RK grid.
  const double h = s[1] - s[0];
  const std::size_t i = std::min(static_cast<std::size_t>(x / h), s.size() - 2);
  const double t = (x - s[i]) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  const double uu = h00 * u[i] + h10 * h * du[i] + h01 * u[i + 1] + h11 * h * du[i + 1];
  return uu / (c * x);
}

double ScatteringSolution::eta(double p) const {
  if (a == 0.0) return 0.0;
  const double q = p / N;
  // Interior: (1 - f) s^2 = s^2 - s u / c.
  const double inner = simpson(s, [&](std::size_t i) { return (s[i] * s[i] - s[i] * u[i] / c) * j0(q * s[i]); });
  // Exterior on [R_support, R_ball].
  const auto g = [&](double x) { return one_minus_f(x) * x * x * j0(q * x); };
  std::vector<double> cuts;
  for (double x = 2.0 * R_support; x < R_ball; x *= 2.0) cuts.push_back(x);
  if (q > 0.0) {
    const double period = kPi / q;
    const double n_half = (R_ball - R_support) / period;
    const double stride = period * std::max(1.0, std::ceil(n_half / 20000.0));
    for (double x = R_support + stride; x < R_ball; x += stride) cuts.push_back(x);
  }
  const auto outer = quad::integrate(g, R_support, R_ball, 1e-9, cuts);
  return -4.0 * kPi / (N * N * N) * (inner + outer.value);
}

double ScatteringSolution::W(double p) const {
  if (a == 0.0) return 0.0;
  const double q = p / N;
  const double integral = simpson(s, [&](std::size_t i) {
    const double si = std::min(s[i], R_support * (1.0 - 1e-15));
    return v_(si) * u[i] * s[i] * j0(q * s[i]);
  });
  return 4.0 * kPi / N * integral / c;
}

double ScatteringSolution::ball_hat(double p) const {
  const double x = p * ell;
  if (x < 1e-2) {
    const double x2 = x * x;
    return 4.0 * kPi / 3.0 * ell * ell * ell * (1.0 - x2 / 10.0 + x2 * x2 / 280.0);
  }
  return 4.0 * kPi * (std::sin(x) - x * std::cos(x)) / (p * p * p);
}

ScatteringSolution::Residual ScatteringSolution::scattering_residual(double p) const {
  const double e = eta(p);
  const double w = W(p);
  const double b = ball_hat(p);
  const double t1 = p * p * e, t2 = 0.5 * w, t3 = lambda_N * (b + e);
  return {t1 + t2 - t3, std::max({std::fabs(t1), std::fabs(t2), std::fabs(t3)})};
}

}  // namespace bosegas

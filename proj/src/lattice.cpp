#include "bosegas/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bosegas/error.hpp"
#include "bosegas/quadrature.hpp"
#include "bosegas/special.hpp"

namespace bosegas {

MomentumLattice::MomentumLattice(double L, double p_max)
    : L_(L), p_max_(p_max), unit_(2.0 * kPi / L) {
  require(L > 0.0 && std::isfinite(L), "lattice: box length must be positive");
  require(std::isfinite(p_max), "lattice: truncation radius must be finite");
  const double kmax = p_max / unit_;
  if (kmax < 1.0) {
    std::ostringstream msg;
    msg << "lattice: p_max=" << p_max << " is below the first shell 2pi/L=" << unit_
        << " (empty lattice)";
    throw ResolutionError(msg.str());
  }
  const auto nmax = static_cast<std::int64_t>(std::floor(kmax * kmax * (1.0 + 1e-14)));
  const auto K = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(nmax))));

  // r2[m] = #{(x, y) : x^2 + y^2 = m}, then r3[n] = sum_z r2[n - z^2].
  std::vector<std::int64_t> r2(nmax + 1, 0);
  for (std::int64_t x = -K; x <= K; ++x) {
    const std::int64_t x2 = x * x;
    for (std::int64_t y = -K; y <= K; ++y) {
      const std::int64_t m = x2 + y * y;
      if (m <= nmax) ++r2[m];
    }
  }
  std::vector<std::int64_t> r3(nmax + 1, 0);
  for (std::int64_t z = -K; z <= K; ++z) {
    const std::int64_t z2 = z * z;
    for (std::int64_t m = 0; m + z2 <= nmax; ++m) r3[m + z2] += r2[m];
  }
  for (std::int64_t n = 1; n <= nmax; ++n) {
    if (r3[n] == 0) continue;
    shells_.push_back({n, unit_ * unit_ * static_cast<double>(n), r3[n]});
  }
}

double MomentumLattice::momentum2(const LatticePoint& k) const {
  return unit_ * unit_ * static_cast<double>(norm2(k));
}

double MomentumLattice::momentum(const LatticePoint& k) const { return std::sqrt(momentum2(k)); }

std::vector<LatticePoint> MomentumLattice::points_within(double radius, bool include_zero) const {
  std::vector<LatticePoint> pts;
  if (radius < 0.0) return pts;
  const double kr = radius / unit_;
  const auto nmax = static_cast<std::int64_t>(std::floor(kr * kr * (1.0 + 1e-14)));
  const int K = static_cast<int>(std::floor(std::sqrt(static_cast<double>(nmax))));
  for (int x = -K; x <= K; ++x)
    for (int y = -K; y <= K; ++y)
      for (int z = -K; z <= K; ++z) {
        const LatticePoint k{x, y, z};
        const auto n = norm2(k);
        if (n > nmax || (n == 0 && !include_zero)) continue;
        pts.push_back(k);
      }
  std::sort(pts.begin(), pts.end(), [](const LatticePoint& a, const LatticePoint& b) {
    const auto na = norm2(a), nb = norm2(b);
    return na != nb ? na < nb : a < b;
  });
  return pts;
}

void MomentumSets::validate() const {
  require(delta_B > 0.0 && delta_L > 0.0 && delta_H > 0.0, "momentum sets: exponents must be positive");
  require(delta_B < 1.0 / 3.0, "momentum sets: delta_B must be below 1/3");
  require(delta_L + delta_H < 2.0 / 3.0, "momentum sets: delta_L + delta_H must be below 2/3");
  require(N >= 1.0 && L > 0.0, "momentum sets: need N >= 1 and L > 0");
}

double MomentumSets::radius_B() const { return std::pow(N, delta_B) / L; }
double MomentumSets::radius_L() const { return std::pow(N, 1.0 / 3.0 + delta_L) / L; }
double MomentumSets::radius_H() const { return std::pow(N, 1.0 - delta_H) / L; }

std::string_view to_string(MomentumLabel label) {
  switch (label) {
    case MomentumLabel::Zero: return "zero";
    case MomentumLabel::B: return "B";
    case MomentumLabel::I: return "I";
    case MomentumLabel::HighTail: return "high-tail";
    case MomentumLabel::H: return "H";
    case MomentumLabel::Other: return "other";
  }
  return "?";
}

MomentumLabel classify(double p2, const MomentumSets& sets) {
  if (p2 <= 0.0) return MomentumLabel::Zero;
  const double p = std::sqrt(p2);
  if (p <= sets.radius_B()) return MomentumLabel::B;
  if (p <= sets.radius_L()) return MomentumLabel::I;
  if (p >= sets.radius_H()) return MomentumLabel::H;
  if (p >= 0.5 * sets.radius_H()) return MomentumLabel::HighTail;
  return MomentumLabel::Other;
}

RadialWindow window_for(MomentumLabel label, const MomentumSets& sets) {
  const double inf = std::numeric_limits<double>::infinity();
  const double rB = sets.radius_B(), rL = sets.radius_L(), rH = sets.radius_H();
  switch (label) {
    case MomentumLabel::Zero: return {0.0, 0.0, true, false};
    case MomentumLabel::B: return {0.0, rB, false, false};
    case MomentumLabel::I: return {rB, rL, false, false};
    case MomentumLabel::H: return {std::max(rH, rL), inf, false, true};
    case MomentumLabel::HighTail: {
      const double lo = std::max(0.5 * rH, rL);
      return {lo, std::max(lo, rH * (1.0 - 1e-15)), false, lo > rL};
    }
    case MomentumLabel::Other: return {rL, std::max(rL, 0.5 * rH * (1.0 - 1e-15)), false, false};
  }
  return {};
}

namespace {

bool in_window(double p, const RadialWindow& w) {
  const bool above = w.lower_inclusive ? p >= w.lower : p > w.lower;
  return above && p <= w.upper;
}

}  // namespace

double riemann_sum_bound(const std::function<double(double)>& f, double cut, double L,
                         double rel_tol) {
  require(L > 0.0, "riemann_sum_bound: L must be positive");
  require(cut >= 0.0, "riemann_sum_bound: cut must be nonnegative");
  const double unit = 2.0 * kPi / L;
  const double r0 = std::max(cut - std::sqrt(3.0) * unit, 0.0);
  const auto integrand = [&](double r) {
    const double fr = f(r);
    if (fr == 0.0) return 0.0;
    return fr * (r * r + 3.0 * kPi * r / L + 6.0 * kPi / (L * L));
  };
  // Geometric breakpoints in units of the lattice spacing resolve integrands
  // whose scale is far from 1.
  std::vector<double> cuts{cut};
  for (double s = unit; s < 1e12 * unit; s *= 4.0) cuts.push_back(r0 + s);
  const auto res = quad::integrate(integrand, r0, std::numeric_limits<double>::infinity(), rel_tol, cuts);
  const double prefactor = std::pow(L / (2.0 * kPi), 3) * 4.0 * kPi;
  return prefactor * res.value;
}

SumResult lattice_sum(const std::function<double(double)>& f, const MomentumLattice& lattice,
                      const RadialWindow& window, const TailSpec& tail) {
  SumResult out;
  if (window.include_zero) out.value += f(0.0);
  for (const Shell& s : lattice.shells()) {
    const double p = std::sqrt(s.p2);
    if (p > window.upper) break;
    if (!in_window(p, window)) continue;
    out.value += static_cast<double>(s.multiplicity) * f(s.p2);
  }
  const double pmax = lattice.p_max();
  if (window.upper <= pmax) return out;

  std::function<double(double)> clipped;
  if (tail.majorant) {
    clipped = [&, pmax](double r) { return tail.majorant(std::max(r, pmax)); };
  } else {
    // Spot check: nonnegative and nonincreasing on a grid beyond the radius.
    double prev = f(pmax * pmax);
    bool ok = prev >= 0.0;
    for (int j = 1; j <= 64 && ok; ++j) {
      const double r = pmax * (1.0 + 0.125 * j);
      const double v = f(r * r);
      ok = v >= 0.0 && v <= prev * (1.0 + 1e-12);
      prev = v;
    }
    if (!ok)
      throw ContractError(
          "lattice_sum: summand is not monotone decreasing beyond the lattice radius and no tail "
          "majorant was supplied");
    clipped = [&, pmax](double r) {
      const double rr = std::max(r, pmax);
      return f(rr * rr);
    };
  }
  const double cut = std::max(pmax, window.lower);
  out.tail_bound = riemann_sum_bound(clipped, cut, lattice.L());
  return out;
}

ConvolutionResult convolve(const CoefficientTable& f, const CoefficientTable& g,
                           const LatticePoint& p, const MomentumLattice& lattice) {
  require(static_cast<bool>(f.coeff) && static_cast<bool>(g.coeff), "convolve: empty coefficient table");
  ConvolutionResult out;
  const double L3 = std::pow(lattice.L(), 3);
  const double q_radius = std::min(g.radius, lattice.p_max());
  const auto qs = lattice.points_within(q_radius, true);
  for (const auto& q : qs) {
    const LatticePoint d = p - q;
    if (lattice.momentum(d) > f.radius * (1.0 + 1e-14)) continue;
    out.value += f.coeff(d) * g.coeff(q);
  }
  out.value /= L3;

  const auto sup_of = [&](const CoefficientTable& t) {
    if (t.majorant) return t.majorant(0.0);
    double m = 0.0;
    for (const auto& k : lattice.points_within(std::min(t.radius, lattice.p_max()), true))
      m = std::max(m, std::fabs(t.coeff(k)));
    return m;
  };

  if (g.radius > lattice.p_max()) {
    out.truncated = true;
    if (!g.majorant)
      throw ResolutionError("convolve: coefficient coverage exceeds the lattice radius and no decay "
                            "majorant was supplied");
    const double cut = lattice.p_max();
    const auto clipped = [&, cut](double r) { return g.majorant(std::max(r, cut)); };
    out.tail_bound += sup_of(f) * riemann_sum_bound(clipped, cut, lattice.L()) / L3;
  }
  if (f.majorant) {
    const double cut = f.radius;
    const auto clipped = [&, cut](double r) { return f.majorant(std::max(r, cut)); };
    out.tail_bound += sup_of(g) * riemann_sum_bound(clipped, cut, lattice.L()) / L3;
  }
  return out;
}

}  // namespace bosegas

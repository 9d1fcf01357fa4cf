#pragma once

// Dual torus lattice (2 pi / L) Z^3: shells, momentum windows, truncated sums
// with certified tails, and the lattice convolution of Fourier coefficients.

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace bosegas {

/// Integer lattice coordinates k; the momentum is p = 2 pi k / L.
using LatticePoint = std::array<int, 3>;

inline LatticePoint operator-(const LatticePoint& a, const LatticePoint& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline LatticePoint operator-(const LatticePoint& a) { return {-a[0], -a[1], -a[2]}; }
inline std::int64_t norm2(const LatticePoint& k) {
  return std::int64_t{k[0]} * k[0] + std::int64_t{k[1]} * k[1] + std::int64_t{k[2]} * k[2];
}

struct Shell {
  std::int64_t n = 0;           // |k|^2
  double p2 = 0.0;              // |p|^2 = (2 pi / L)^2 n
  std::int64_t multiplicity = 0;
};

/// Nonzero shells of (2 pi / L) Z^3 up to a truncation radius, ascending in |p|^2.
class MomentumLattice {
 public:
  /// Throws ContractError for L <= 0 and ResolutionError when p_max lies
  /// below the first shell 2 pi / L.
  MomentumLattice(double L, double p_max);

  double L() const noexcept { return L_; }
  double p_max() const noexcept { return p_max_; }
  double unit() const noexcept { return unit_; }  // 2 pi / L
  std::span<const Shell> shells() const noexcept { return shells_; }

  double momentum(const LatticePoint& k) const;
  double momentum2(const LatticePoint& k) const;

  /// Every lattice vector with 0 < |p| <= radius (or including 0 when asked),
  /// ordered by |k|^2 and then lexicographically.
  std::vector<LatticePoint> points_within(double radius, bool include_zero = false) const;

 private:
  double L_;
  double p_max_;
  double unit_;
  std::vector<Shell> shells_;
};

/// Momentum-space partition used by the trial-state construction.
struct MomentumSets {
  double delta_B = 1.0 / 12.0;
  double delta_L = 1.0 / 12.0;
  double delta_H = 5.0 / 12.0;
  double N = 0.0;
  double L = 1.0;

  /// Validates the exponent constraints; throws ContractError otherwise.
  void validate() const;

  double radius_B() const;  // N^{delta_B} / L
  double radius_L() const;  // N^{1/3 + delta_L} / L
  double radius_H() const;  // N^{1 - delta_H} / L
};

enum class MomentumLabel { Zero, B, I, HighTail, H, Other };

std::string_view to_string(MomentumLabel label);

MomentumLabel classify(double p2, const MomentumSets& sets);

/// Radial window a < |p| <= b, optionally including p = 0.
struct RadialWindow {
  double lower = 0.0;  // exclusive
  double upper = std::numeric_limits<double>::infinity();  // inclusive
  bool include_zero = false;
  bool lower_inclusive = false;
};

RadialWindow window_for(MomentumLabel label, const MomentumSets& sets);

struct SumResult {
  double value = 0.0;
  double tail_bound = 0.0;  // certified bound on the part beyond the lattice radius
};

/// How the part of a sum beyond the lattice radius is certified.
struct TailSpec {
  /// Monotone decreasing majorant g(|p|) >= |f| beyond the lattice radius.
  /// Empty means the summand itself is declared eventually monotone
  /// decreasing and nonnegative; this is spot-checked.
  std::function<double(double)> majorant;
};

/// Sum of f(|p|^2) over lattice momenta in the window, accumulated shell by
/// shell in ascending |p|^2 (bit reproducible). The tail beyond the lattice
/// radius is bounded by the Riemann-sum comparison.
SumResult lattice_sum(const std::function<double(double)>& f, const MomentumLattice& lattice,
                      const RadialWindow& window = {}, const TailSpec& tail = {});

/// Upper bound for sum_{p != 0, |p| >= cut} f(|p|) with f nonnegative and
/// monotone decreasing on [0, inf):
///   (L/2pi)^3 int_{|p| >= [cut - sqrt(3) 2pi/L]_+} f(|p|) (1 + 3pi/(L|p|) + 6pi/(L^2 p^2)) dp.
/// Throws ResolutionError when the integral diverges.
double riemann_sum_bound(const std::function<double(double)>& f, double cut, double L,
                         double rel_tol = 1e-10);

/// Fourier-coefficient table: coefficients at lattice points with |p| <= radius.
/// Beyond the radius the table is zero, unless a monotone decreasing majorant
/// of |coefficient| in |p| is supplied.
struct CoefficientTable {
  std::function<double(const LatticePoint&)> coeff;
  double radius = 0.0;
  std::function<double(double)> majorant;
};

struct ConvolutionResult {
  double value = 0.0;
  double tail_bound = 0.0;
  bool truncated = false;  // coverage reached beyond the lattice radius
};

/// L^{-3} sum_q f(p - q) g(q) over the covered lattice window.
ConvolutionResult convolve(const CoefficientTable& f, const CoefficientTable& g,
                           const LatticePoint& p, const MomentumLattice& lattice);

}  // namespace bosegas

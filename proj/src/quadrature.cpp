#include "bosegas/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "bosegas/error.hpp"

namespace bosegas::quad {

Result integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 std::span<const double> breakpoints) {
  require(rel_tol > 0.0, "quadrature tolerance must be positive");
  require(b > a, "quadrature domain must be nonempty");

  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(b);

  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  struct Segment {
    double a, b, value, error, l1;
  };
  const auto eval = [&](double lo, double hi) {
    Segment seg{lo, hi, 0.0, 0.0, 0.0};
    if (std::isfinite(hi)) {
      // Single rule; the library leaves its error in [-1, 1] units, so rescale here.
      seg.value = GK::integrate(f, lo, hi, 0, 0.0, &seg.error, &seg.l1);
      seg.error *= 0.5 * (hi - lo);
    } else {
      seg.value = GK::integrate(f, lo, hi, 8, rel_tol * 1e-2, &seg.error, &seg.l1);
    }
    return seg;
  };
  std::vector<Segment> segs;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) segs.push_back(eval(cuts[i], cuts[i + 1]));

  Result total;
  double l1 = 0.0;
  const auto tally = [&] {
    total = {};
    l1 = 0.0;
    for (const auto& s : segs) {
      total.value += s.value;
      total.error += s.error;
      l1 += s.l1;
    }
  };
  tally();
  // Global refinement: bisect the worst finite segment until the budget runs out.
  for (int round = 0; round < 4000; ++round) {
    const double scale = std::max(std::fabs(total.value), 1e-3 * l1);
    if (!std::isfinite(total.value) || total.error <= rel_tol * scale) break;
    const auto key = [](const Segment& x) { return std::isfinite(x.b) ? x.error : -1.0; };
    auto worst = std::max_element(segs.begin(), segs.end(),
                                  [&](const Segment& x, const Segment& y) { return key(x) < key(y); });
    if (!std::isfinite(worst->b) || worst->error == 0.0) break;
    const double mid = 0.5 * (worst->a + worst->b);
    if (!(mid > worst->a && mid < worst->b)) break;
    const Segment left = eval(worst->a, mid), right = eval(mid, worst->b);
    *worst = left;
    segs.push_back(right);
    tally();
  }
  std::ostringstream trace;
  std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  for (const auto& s : segs)
    if (s.error > 1e-3 * total.error)
      trace << "  [" << s.a << ", " << s.b << "] value=" << s.value << " err=" << s.error << '\n';
  // Sign-changing integrands that nearly cancel are judged against their L1 norm.
  const double scale = std::max(std::fabs(total.value), 1e-3 * l1);
  if (!std::isfinite(total.value) || total.error > rel_tol * scale) {
    std::ostringstream msg;
    msg << "quadrature did not converge: value=" << total.value << " err=" << total.error
        << " rel_tol=" << rel_tol << "\n" << trace.str();
    throw ResolutionError(msg.str());
  }
  return total;
}

}  // namespace bosegas::quad

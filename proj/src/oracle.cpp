#include "bosegas/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "bosegas/error.hpp"

namespace bosegas::oracle {

namespace {

FockPairResult solve_pair(double p2, double mu0, double rho0, double Wp, double beta, int n_max, int head) {
  const double A = p2 - mu0 + rho0 * Wp;
  const double B = rho0 * Wp;

  struct Block {
    int d;
    Eigen::VectorXd E;
    Eigen::MatrixXd V;
  };
  std::vector<Block> blocks;
  double Emin = std::numeric_limits<double>::infinity();
  for (int d = -n_max; d <= n_max; ++d) {
    // States (n, n - d) with both occupations in [0, n_max].
    const int m0 = std::max(0, -d);
    const int dim = n_max + 1 - std::abs(d);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
      const int m = m0 + i, n = m + d;
      H(i, i) = A * (n + m);
      if (i + 1 < dim) {
        // a_p^* a_{-p}^* |n, m> = sqrt((n+1)(m+1)) |n+1, m+1>.
        const double c = B * std::sqrt((n + 1.0) * (m + 1.0));
        H(i + 1, i) = c;
        H(i, i + 1) = c;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    Emin = std::min(Emin, es.eigenvalues()(0));
    blocks.push_back({d, es.eigenvalues(), es.eigenvectors()});
  }

  FockPairResult out;
  out.E0_pair = Emin;
  std::vector<double> all;
  double Z = 0.0, n_sum = 0.0, pair_sum = 0.0, boundary = 0.0, inner = 0.0;
  for (const auto& b : blocks) {
    const int m0 = std::max(0, -b.d);
    const int dim = static_cast<int>(b.E.size());
    for (int k = 0; k < dim; ++k) {
      all.push_back(b.E(k));
      const double w = std::exp(-beta * (b.E(k) - Emin));
      if (w == 0.0) continue;
      const auto psi = b.V.col(k);
      double n_exp = 0.0, pair = 0.0;
      for (int i = 0; i < dim; ++i) {
        const int m = m0 + i, n = m + b.d;
        n_exp += psi(i) * psi(i) * n;
        // a_p a_{-p} |n, m> = sqrt(n m) |n-1, m-1>.
        if (i > 0) pair += psi(i - 1) * psi(i) * std::sqrt(double(n) * m);
      }
      // Mass on the truncation boundary (either occupation equal to n_max).
      const double edge = psi(dim - 1) * psi(dim - 1);
      const double next = dim > 1 ? psi(dim - 2) * psi(dim - 2) : 0.0;
      Z += w;
      n_sum += w * n_exp;
      pair_sum += w * pair;
      boundary += w * edge;
      inner += w * next;
    }
  }
  out.gamma = n_sum / Z;
  out.alpha = pair_sum / Z;
  std::sort(all.begin(), all.end());
  all.resize(std::min<std::size_t>(all.size(), static_cast<std::size_t>(head)));
  out.spectrum_head = all;
  // The occupation mass decays roughly geometrically towards the cut; the
  // missing mass and its mean occupation follow from the last two levels.
  const double q = inner > 0.0 ? std::min(boundary / inner, 0.99) : 0.0;
  out.tail_estimate = (n_max + 1.0) * (boundary / Z) / ((1.0 - q) * (1.0 - q));
  return out;
}

}  // namespace

FockPairResult truncated_fock_pair(double p2, double mu0, double rho0, double Wp, double beta, int n_max,
                                   double tol, int head) {
  require(n_max >= 10 && n_max <= 63, "truncated_fock_pair: n_max must lie in [10, 63]");
  require(Wp >= 0.0 && rho0 >= 0.0, "truncated_fock_pair: need W >= 0 and rho0 >= 0");
  require(p2 - mu0 > 0.0 && beta > 0.0, "truncated_fock_pair: need p^2 - mu0 > 0 and beta > 0");
  auto out = solve_pair(p2, mu0, rho0, Wp, beta, n_max, head);
  // A coarser cut measures how far the observables still move.
  const auto coarse = solve_pair(p2, mu0, rho0, Wp, beta, n_max - std::max(4, n_max / 4), 1);
  const double moved = std::max(std::fabs(out.gamma - coarse.gamma), std::fabs(out.alpha - coarse.alpha));
  out.tail_estimate = std::max(out.tail_estimate, moved);
  out.conclusive = out.tail_estimate <= tol;
  return out;
}

std::complex<double> wick_2pdm(const LatticePoint& u1, const LatticePoint& v1, const LatticePoint& u2,
                               const LatticePoint& v2, const WickInputs& in) {
  const LatticePoint zero{0, 0, 0};
  const auto is0 = [&](const LatticePoint& k) { return k == zero; };
  const auto g = [&](const LatticePoint& k) { return is0(k) ? 0.0 : in.gamma(k); };
  const auto a = [&](const LatticePoint& k) { return is0(k) ? std::complex<double>{} : in.alpha(k); };
  const auto d = [](const LatticePoint& x, const LatticePoint& y) { return x == y ? 1.0 : 0.0; };
  const auto dm = [](const LatticePoint& x, const LatticePoint& y) { return x == -y ? 1.0 : 0.0; };

  std::complex<double> v = 0.0;
  if (is0(u1) && is0(v1) && is0(u2) && is0(v2)) v += in.fourth_moment;
  v += in.M0 * (g(v1) * d(v1, v2) * is0(u1) * is0(u2) + g(u1) * d(u1, u2) * is0(v1) * is0(v2) +
                g(u1) * d(u1, v2) * is0(v1) * is0(u2) + g(v1) * d(v1, u2) * is0(u1) * is0(v2));
  v += in.M0 * (a(u2) * dm(u2, v2) * double(is0(u1) && is0(v1)) +
                std::conj(a(u1)) * dm(u1, v1) * double(is0(u2) && is0(v2)));
  v += g(u1) * g(v1) * d(u1, u2) * d(v1, v2) + g(u1) * g(v1) * d(u1, v2) * d(v1, u2) +
       std::conj(a(u1)) * a(u2) * dm(u1, v1) * dm(u2, v2);
  return v;
}

}  // namespace bosegas::oracle

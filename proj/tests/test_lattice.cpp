#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "bosegas/error.hpp"
#include "bosegas/lattice.hpp"
#include "bosegas/special.hpp"

using namespace bosegas;

namespace {

// Direct triple enumeration: sum of f(|k|^2) over k != 0 with |k|^2 <= n_max.
double brute_sum(double (*f)(double), int K, double scale2) {
  double s = 0.0;
  for (int x = -K; x <= K; ++x)
    for (int y = -K; y <= K; ++y)
      for (int z = -K; z <= K; ++z) {
        const int n = x * x + y * y + z * z;
        if (n == 0) continue;
        s += f(scale2 * n);
      }
  return s;
}

double gauss(double p2) { return std::exp(-p2); }

}  // namespace

TEST(Lattice, UnitShells) {
  const MomentumLattice a(2 * kPi, 1.5);
  ASSERT_EQ(a.shells().size(), 2u);
  EXPECT_EQ(a.shells()[0].n, 1);
  EXPECT_EQ(a.shells()[0].multiplicity, 6);
  EXPECT_EQ(a.shells()[1].n, 2);
  EXPECT_EQ(a.shells()[1].multiplicity, 12);

  const MomentumLattice b(2 * kPi, 2.5);
  const std::vector<std::pair<std::int64_t, std::int64_t>> want{{1, 6}, {2, 12}, {3, 8}, {4, 6}, {5, 24}, {6, 24}};
  ASSERT_EQ(b.shells().size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(b.shells()[i].n, want[i].first);
    EXPECT_EQ(b.shells()[i].multiplicity, want[i].second);
  }

  const MomentumLattice c(1.0, 2 * kPi * 1.1);
  ASSERT_EQ(c.shells().size(), 1u);
  EXPECT_NEAR(c.shells()[0].p2, 4 * kPi * kPi, 1e-12);
  EXPECT_EQ(c.shells()[0].multiplicity, 6);
}

TEST(Lattice, EmptyLatticeRejected) {
  EXPECT_THROW(MomentumLattice(1.0, 6.0), ResolutionError);
  EXPECT_THROW(MomentumLattice(-1.0, 6.0), ContractError);
}

TEST(Lattice, MultiplicitiesMatchEnumeration) {
  const double L = 3.0;
  const MomentumLattice lat(L, 2 * kPi / L * 9.3);
  std::map<std::int64_t, std::int64_t> counts;
  for (int x = -10; x <= 10; ++x)
    for (int y = -10; y <= 10; ++y)
      for (int z = -10; z <= 10; ++z) {
        const std::int64_t n = x * x + y * y + z * z;
        if (n > 0 && n <= 86) ++counts[n];
      }
  ASSERT_EQ(lat.shells().size(), counts.size());
  std::size_t i = 0;
  for (const auto& [n, m] : counts) {
    EXPECT_EQ(lat.shells()[i].n, n);
    EXPECT_EQ(lat.shells()[i].multiplicity, m);
    if (i > 0) EXPECT_GT(lat.shells()[i].p2, lat.shells()[i - 1].p2);
    ++i;
  }
  EXPECT_NEAR(std::sqrt(lat.shells()[0].p2), 2 * kPi / L, 1e-14);
  EXPECT_EQ(lat.points_within(lat.p_max()).size(),
            static_cast<std::size_t>(std::accumulate(
                counts.begin(), counts.end(), std::int64_t{0},
                [](std::int64_t s, const auto& kv) { return s + kv.second; })));
}

TEST(LatticeSum, ZeroSummand) {
  const MomentumLattice lat(2 * kPi, 10.0);
  const auto r = lattice_sum([](double) { return 0.0; }, lat);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.tail_bound, 0.0);
}

TEST(LatticeSum, ThetaFunction) {
  const MomentumLattice lat(2 * kPi, 10.0);
  const auto r = lattice_sum(gauss, lat);
  // theta_3(e^{-1})^3 - 1 (mpmath, 40 digits).
  EXPECT_NEAR(r.value, 4.5700562455953886067, 1e-12);
  EXPECT_NEAR(r.value, brute_sum(gauss, 12, 1.0), 1e-12);
  EXPECT_LT(r.tail_bound, 1e-30);
}

TEST(LatticeSum, BoseTailSelfConsistent) {
  const auto bose = [](double p2) { return 1.0 / std::expm1(p2); };
  const MomentumLattice small(2 * kPi, 3.0);
  const MomentumLattice big(2 * kPi, 6.0);
  const auto a = lattice_sum(bose, small);
  const auto b = lattice_sum(bose, big);
  EXPECT_TRUE(std::isfinite(a.value));
  EXPECT_GT(a.tail_bound, 0.0);
  EXPECT_LE(std::fabs(b.value - a.value), a.tail_bound);
}

TEST(LatticeSum, NonMonotoneWithoutMajorantRejected) {
  const MomentumLattice lat(2 * kPi, 3.0);
  const auto wavy = [](double p2) { return 1.0 + std::sin(p2); };
  EXPECT_THROW(lattice_sum(wavy, lat), ContractError);
  TailSpec tail{[](double r) { return std::exp(-r); }};
  const auto damped = [](double p2) { return std::exp(-std::sqrt(p2)) * std::cos(p2); };
  EXPECT_NO_THROW(lattice_sum(damped, lat, {}, tail));
}

TEST(LatticeSum, WindowsPartitionLattice) {
  MomentumSets sets;
  sets.N = 1e6;
  sets.L = 1.0;
  sets.delta_B = 0.3;
  sets.validate();
  const MomentumLattice lat(1.0, 1.2 * sets.radius_H());
  const auto one = [](double) { return 1.0; };
  double total = 0.0;
  for (auto label : {MomentumLabel::B, MomentumLabel::I, MomentumLabel::Other, MomentumLabel::HighTail}) {
    total += lattice_sum(one, lat, window_for(label, sets)).value;
  }
  RadialWindow below_h{0.0, sets.radius_H() * (1.0 - 1e-15)};
  EXPECT_EQ(total, lattice_sum(one, lat, below_h).value);
  // B u I equals P_L minus zero.
  const double bi = lattice_sum(one, lat, window_for(MomentumLabel::B, sets)).value +
                    lattice_sum(one, lat, window_for(MomentumLabel::I, sets)).value;
  EXPECT_EQ(bi, lattice_sum(one, lat, {0.0, sets.radius_L()}).value);
}

TEST(Classify, Labels) {
  MomentumSets sets;
  sets.N = 1e6;
  sets.L = 1.0;
  EXPECT_EQ(classify(0.0, sets), MomentumLabel::Zero);
  EXPECT_EQ(classify(4 * kPi * kPi, sets), MomentumLabel::I);
  const double pH = std::pow(1e6, 7.0 / 12.0) * 2.0;
  EXPECT_EQ(classify(pH * pH, sets), MomentumLabel::H);
  EXPECT_EQ(classify(std::pow(0.75 * sets.radius_H(), 2), sets), MomentumLabel::HighTail);
  EXPECT_EQ(classify(1.0, sets), MomentumLabel::B);
  MomentumSets bad = sets;
  bad.delta_B = 0.4;
  EXPECT_THROW(bad.validate(), ContractError);
  bad = sets;
  bad.delta_L = 0.3;
  bad.delta_H = 0.4;
  EXPECT_THROW(bad.validate(), ContractError);
}

TEST(RiemannBound, DominatesEnumeration) {
  const double L = 2 * kPi;
  EXPECT_EQ(riemann_sum_bound([](double) { return 0.0; }, 0.0, L), 0.0);
  const double g = riemann_sum_bound([](double r) { return std::exp(-r * r); }, 0.0, L);
  EXPECT_GE(g, 4.5700562455953886067);
  // 1/|p|^4 beyond |p| >= 4 pi / L = 2.
  double exact = 0.0;
  const int K = 400;
  for (int x = -K; x <= K; ++x)
    for (int y = -K; y <= K; ++y)
      for (int z = -K; z <= K; ++z) {
        const double n = double(x) * x + double(y) * y + double(z) * z;
        if (n >= 4.0) exact += 1.0 / (n * n);
      }
  // Beyond the box the remainder is below 4 pi / K.
  const auto inv4 = [](double r) { return std::pow(std::max(r, 1.0), -4.0); };
  const double bound = riemann_sum_bound(inv4, 2.0, L, 1e-8);
  EXPECT_TRUE(std::isfinite(bound));
  EXPECT_GE(bound, exact + 4.0 * kPi / K);
}

TEST(RiemannBound, DivergentRejected) {
  EXPECT_THROW(riemann_sum_bound([](double r) { return 1.0 / (1.0 + r * r); }, 0.0, 2 * kPi),
               ResolutionError);
}

TEST(Convolve, DeltaAndCounting) {
  const double L = 2 * kPi;
  const MomentumLattice lat(L, 5.0);
  const double L3 = L * L * L;
  CoefficientTable f{[](const LatticePoint& k) { return std::exp(-double(norm2(k))); }, 4.9, {}};
  CoefficientTable delta{[&](const LatticePoint& k) { return norm2(k) == 0 ? L3 : 0.0; }, 0.0, {}};
  const auto r = convolve(f, delta, {1, 2, 0}, lat);
  EXPECT_NEAR(r.value, std::exp(-5.0), 1e-15);

  CoefficientTable shell{[](const LatticePoint& k) { return norm2(k) == 1 ? 1.0 : 0.0; }, 1.0, {}};
  EXPECT_NEAR(convolve(shell, shell, {0, 0, 0}, lat).value, 6.0 / L3, 1e-15);
}

TEST(Convolve, GaussianMatchesDoubleLoop) {
  const double L = 2 * kPi;
  const MomentumLattice lat(L, 8.0);
  const auto g = [](const LatticePoint& k) { return std::exp(-double(norm2(k))); };
  CoefficientTable t{g, 8.0, [](double r) { return std::exp(-r * r); }};
  const auto r = convolve(t, t, {0, 0, 0}, lat);
  double oracle = 0.0;
  for (int x = -8; x <= 8; ++x)
    for (int y = -8; y <= 8; ++y)
      for (int z = -8; z <= 8; ++z) {
        const LatticePoint q{x, y, z};
        if (norm2(q) > 64) continue;
        oracle += g(-q) * g(q);
      }
  oracle /= L * L * L;
  EXPECT_NEAR(r.value, oracle, 1e-12);
  EXPECT_LT(r.tail_bound, 1e-20);
  EXPECT_FALSE(r.truncated);
}

TEST(Convolve, CoverageBeyondLatticeNeedsMajorant) {
  const MomentumLattice lat(2 * kPi, 3.0);
  CoefficientTable wide{[](const LatticePoint&) { return 1.0; }, 10.0, {}};
  EXPECT_THROW(convolve(wide, wide, {0, 0, 0}, lat), ResolutionError);
}

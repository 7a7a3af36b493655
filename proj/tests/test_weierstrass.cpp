#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "sig4/verify.hpp"
#include "sig4/weierstrass.hpp"

using namespace sig4;

namespace {

constexpr Invariants kDd{(3 * 0.64 + 1) / 3, (9 * 0.64 - 1) / 27};  // kappa = 0.6
constexpr Invariants kY4{16.0 / 3 * (1 + 3 * 0.64), 64.0 / 27 * (1 - 9 * 0.64)};

// mpmath oracle (theta-function route), kappa = 0.6.
constexpr double kOmega = 1.70487531397291733139;
constexpr double kOmegaPrime = 2.66540534382239573582;
constexpr double kBigOmega = 1.33270267191119786791;
constexpr double kBigOmegaPrime = 0.85243765698645866570;

std::vector<complex> cell_samples(const PeriodPair& pp, std::size_t n, std::uint64_t seed) {
  Sampler s(seed);
  std::vector<complex> out;
  while (out.size() < n) {
    const complex z = s.in_cell(pp);
    if (lattice_distance(z, 0.0, pp) >= 0.05 * pp.min_half()) out.push_back(z);
  }
  return out;
}

// Reference p for arbitrary complex invariants near the origin: Laurent
// series in halved arguments, doubled back. Only used where the library's
// real-lattice evaluator does not apply.
complex reference_wp(complex z, complex g2, complex g3, double radius) {
  std::array<complex, 30> c{};
  c[0] = g2 / 20.0;
  c[1] = g3 / 28.0;
  for (int k = 4; k < 32; ++k) {
    complex s = 0;
    for (int m = 2; m <= k - 2; ++m) s += c[m - 2] * c[k - m - 2];
    c[k - 2] = 3.0 * s / double((2 * k + 1) * (k - 3));
  }
  int halvings = 0;
  while (std::abs(z) > 0.25 * radius) z /= 2.0, ++halvings;
  const complex z2 = z * z;
  complex series = 0, dseries = 0;
  for (int k = 31; k >= 2; --k) {
    series = series * z2 + c[k - 2];
    dseries = dseries * z2 + (2.0 * k - 2) * c[k - 2];
  }
  complex p = 1.0 / z2 + series * z2;
  complex dp = -2.0 / (z2 * z) + dseries * z;
  for (int i = 0; i < halvings; ++i) {
    const complex second = 6.0 * p * p - g2 / 2.0;
    const complex q = second / (2.0 * dp);
    const complex p2 = -2.0 * p + q * q;
    dp = -dp + second * (12.0 * p * dp * dp - second * second) / (4.0 * dp * dp * dp);
    p = p2;
  }
  return p;
}

}  // namespace

TEST(Midpoints, ClosedForms) {
  const auto e = midpoints(kDd);
  EXPECT_NEAR(e.e1, 1.0 / 6 + 0.4, 1e-14);
  EXPECT_NEAR(e.e2, 1.0 / 6 - 0.4, 1e-14);
  EXPECT_NEAR(e.e3, -1.0 / 3, 1e-14);
  const auto E = midpoints(kY4);
  EXPECT_NEAR(E.e1, 4.0 / 3, 1e-13);
  EXPECT_NEAR(E.e2, -2.0 / 3 + 1.6, 1e-13);
  EXPECT_NEAR(E.e3, -2.0 / 3 - 1.6, 1e-13);
  const auto t = midpoints({1, 0});
  EXPECT_NEAR(t.e1, 0.5, 1e-15);
  EXPECT_NEAR(t.e2, 0.0, 1e-15);
  EXPECT_NEAR(t.e3, -0.5, 1e-15);
}

TEST(Midpoints, RejectsNonRectangular) {
  EXPECT_THROW(midpoints({-1, 0}), domain_error);
  EXPECT_THROW(midpoints({3, 1}), domain_error);
  EXPECT_THROW(Weierstrass({0, 1}), domain_error);
}

TEST(HalfPeriods, OracleValues) {
  const auto pp = half_periods(kDd);
  EXPECT_NEAR(pp.half_real, kOmega, 1e-13);
  EXPECT_NEAR(pp.half_imag_mag, kOmegaPrime, 1e-13);
  const auto PP = half_periods(kY4);
  EXPECT_NEAR(PP.half_real, kBigOmega, 1e-13);
  EXPECT_NEAR(PP.half_imag_mag, kBigOmegaPrime, 1e-13);
}

TEST(CompleteEllipticK, KnownValues) {
  EXPECT_NEAR(complete_elliptic_k(0), std::numbers::pi / 2, 1e-15);
  // K(1/2) = Gamma(1/4)^2 / (4 sqrt(pi)).
  EXPECT_NEAR(complete_elliptic_k(0.5), 1.85407467730137191843, 1e-14);
  EXPECT_THROW(complete_elliptic_k(1), domain_error);
}

TEST(Wp, OracleValues) {
  const Weierstrass p(kDd);
  auto expect_close = [](complex got, complex want, double tol) {
    EXPECT_NEAR(got.real(), want.real(), tol);
    EXPECT_NEAR(got.imag(), want.imag(), tol);
  };
  expect_close(p.value({0.3, 0.2}), {2.96093668257879112782, -7.09467683810618330694}, 1e-12);
  expect_close(p.value(0.7), {2.06627269949399782521, 0}, 1e-13);
  expect_close(p.value({1.1, -0.9}), {0.09134698544863525391, 0.38507049648736229093}, 1e-13);
  expect_close(p.value({-0.4, 1.3}), {-0.51303232753772984350, 0.26904622680632496567}, 1e-13);
  expect_close(wp({0.2, 0.1}, {1, 0}), {12.0014999024998467809, -15.9979999633353289851}, 1e-11);
}

TEST(Wp, MidpointValues) {
  const Weierstrass p(kDd);
  const auto& pp = p.periods();
  const auto& e = p.midpoints();
  EXPECT_NEAR(std::abs(p.value(pp.real_half()) - e.e1), 0, 1e-12);
  EXPECT_NEAR(std::abs(p.value(pp.real_half() + pp.imag_half()) - e.e2), 0, 1e-12);
  EXPECT_NEAR(std::abs(p.value(pp.imag_half()) - e.e3), 0, 1e-12);
  EXPECT_NEAR(p.value(pp.real_half()).real(), 1.0 / 6 + 0.4, 1e-9);
  EXPECT_NEAR(p.value(pp.imag_half()).real(), -1.0 / 3, 1e-9);
  EXPECT_LE(std::abs(p.derivative(pp.real_half())), 1e-10);
  EXPECT_LE(std::abs(p.derivative(pp.real_half() + pp.imag_half())), 1e-10);
  EXPECT_LE(std::abs(p.derivative(pp.imag_half())), 1e-10);
}

TEST(Wp, PoleAtLatticePoints) {
  const Weierstrass p(kDd);
  const auto& pp = p.periods();
  EXPECT_THROW(p.value(0.0), pole_error);
  EXPECT_THROW(p.value(2.0 * pp.real_half() + 4.0 * pp.imag_half()), pole_error);
  EXPECT_FALSE(p.try_evaluate(-2.0 * pp.imag_half()).has_value());
  EXPECT_THROW(wp(0.0, {1, 0}), pole_error);
}

TEST(Wp, QuarterValues) {
  const auto [half, half_plus_imag] = wp_quarter_values(kY4);
  EXPECT_NEAR(half, 4.0 / 3 + 1.2, 1e-13);
  EXPECT_NEAR(half_plus_imag, 4.0 / 3 - 1.2, 1e-13);
  const Weierstrass P(kY4);
  const auto& pp = P.periods();
  EXPECT_NEAR(std::abs(P.value(pp.real_half() / 2.0) - half), 0, 1e-12);
  EXPECT_NEAR(std::abs(P.value(pp.real_half() / 2.0 + pp.imag_half()) - half_plus_imag), 0, 1e-12);
}

TEST(Wp, DefiningEquationOnCellSamples) {
  for (const Invariants inv : {kDd, kY4, Invariants{1, 0}, Invariants{4, 0.5}}) {
    const Weierstrass p(inv);
    for (const complex z : cell_samples(p.periods(), 200, 5)) {
      const auto [v, d] = p.evaluate(z);
      const complex rhs = 4.0 * v * v * v - inv.g2 * v - inv.g3;
      EXPECT_LE(std::abs(d * d - rhs), 1e-9 * (1 + std::pow(std::abs(v), 3))) << z;
    }
  }
  const Weierstrass p(kDd);
  const auto [v, d] = p.evaluate({0.3, 0.2});
  EXPECT_LE(std::abs(d * d - (4.0 * v * v * v - kDd.g2 * v - kDd.g3)), 1e-9);
}

TEST(Wp, Periodicity) {
  const Weierstrass p(kDd);
  const auto& pp = p.periods();
  for (const complex z : cell_samples(pp, 100, 6)) {
    EXPECT_LE(std::abs(p.value(z + 2.0 * pp.real_half()) - p.value(z)), 1e-10 * (1 + std::abs(p.value(z))));
    EXPECT_LE(std::abs(p.value(z + 2.0 * pp.imag_half()) - p.value(z)), 1e-10 * (1 + std::abs(p.value(z))));
  }
}

TEST(Wp, Evenness) {
  const Weierstrass p(kDd);
  for (const complex z : cell_samples(p.periods(), 100, 7)) {
    EXPECT_LE(std::abs(p.value(-z) - p.value(z)), 1e-12 * (1 + std::abs(p.value(z))));
  }
}

TEST(Wp, DerivativeMatchesFiniteDifference) {
  const Weierstrass p(kDd);
  auto f = [&](complex z) { return p.value(z); };
  for (const complex z : cell_samples(p.periods(), 100, 8)) {
    EXPECT_LE(std::abs(p.derivative(z) - central_difference(f, z, 1e-6)), 1e-6 * (1 + std::abs(p.derivative(z))));
  }
}

// p(z; gamma^4 g2, gamma^6 g3) = gamma^2 p(gamma z; g2, g3).
TEST(Wp, Homogeneity) {
  const Weierstrass base(kDd);
  const auto samples = cell_samples(base.periods(), 100, 9);
  for (const complex gamma : {complex(2, 0), complex(0, 1), complex(0, 2)}) {
    const complex g4 = std::pow(gamma, 4), g6 = std::pow(gamma, 6);
    const Weierstrass scaled({(g4 * kDd.g2).real(), (g6 * kDd.g3).real()});
    for (const complex z0 : samples) {
      const complex z = z0 / gamma;  // keeps gamma z clear of the lattice
      const complex lhs = scaled.value(z);
      const complex rhs = gamma * gamma * base.value(gamma * z);
      EXPECT_LE(std::abs(lhs - rhs), 1e-9 * (1 + std::abs(lhs))) << gamma << ' ' << z;
    }
  }
  // gamma = 1 + i gives complex invariants; compare against the series route.
  const complex gamma(1, 1);
  const complex g2 = std::pow(gamma, 4) * kDd.g2, g3 = std::pow(gamma, 6) * kDd.g3;
  const double radius = 2 * base.periods().min_half() / std::abs(gamma);
  for (const complex z0 : samples) {
    const complex z = z0 / gamma;
    const complex lhs = reference_wp(z, g2, g3, radius);
    const complex rhs = gamma * gamma * base.value(gamma * z);
    EXPECT_LE(std::abs(lhs - rhs), 1e-9 * (1 + std::abs(lhs))) << z;
  }
}

TEST(LatticeReduce, Examples) {
  const auto pp = half_periods(kDd);
  EXPECT_LE(std::abs(lattice_reduce(2.0 * pp.real_half(), pp)), 1e-14);
  EXPECT_LE(std::abs(lattice_reduce(pp.real_half() + 10.0 * pp.real_half(), pp) - pp.real_half()), 1e-13);
  EXPECT_LE(std::abs(lattice_reduce(0.3 + 2.0 * pp.imag_half(), pp) - 0.3), 1e-14);
  EXPECT_NEAR(lattice_distance({0.1, 0}, 2.0 * pp.real_half(), pp), 0.1, 1e-14);
}

TEST(RealPreimage, InvertsAlongPerimeter) {
  const Weierstrass p(kDd);
  const auto& e = p.midpoints();
  for (double target : {5.0, e.e1, 0.0, e.e2, -0.3, e.e3, -2.0}) {
    const complex z = p.real_preimage(target);
    EXPECT_NEAR(std::abs(p.value(z) - target), 0, 1e-11 * (1 + std::abs(target))) << target;
  }
}

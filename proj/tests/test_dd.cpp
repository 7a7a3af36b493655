#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sig4/dd.hpp"
#include "sig4/verify.hpp"

using namespace sig4;

namespace {

constexpr double kOmega = 1.70487531397291733139;       // kappa = 0.6
constexpr double kOmegaPrime = 2.66540534382239573582;  // |omega'|, kappa = 0.6

}  // namespace

TEST(Modulus, ComplementAndAngles) {
  const auto m = Modulus::from_kappa(0.6);
  EXPECT_DOUBLE_EQ(m.lambda(), 0.8);
  EXPECT_NEAR(std::sin(m.alpha()), 0.6, 1e-15);
  EXPECT_NEAR(std::sin(m.beta()), 0.8, 1e-15);
}

TEST(Modulus, OutsideUnitIntervalIsDomainError) {
  for (double k : {0.0, 1.0, -0.3, 1.5, std::nan("")}) EXPECT_THROW(Modulus::from_kappa(k), domain_error);
  EXPECT_THROW(make_context(1.5), domain_error);
}

TEST(MakeContext, InvariantsAndPeriods) {
  const auto ctx = make_context(0.6);
  EXPECT_NEAR(ctx.invariants().g2, 0.97333333333333333333, 1e-15);
  EXPECT_NEAR(ctx.invariants().g3, 0.17629629629629629630, 1e-15);
  EXPECT_NEAR(ctx.invariants().discriminant(), 0.082944, 1e-15);
  EXPECT_NEAR(ctx.periods().half_real, kOmega, 1e-13);
  EXPECT_NEAR(ctx.periods().half_imag_mag, kOmegaPrime, 1e-13);
}

TEST(ForwardIntegral, Values) {
  const auto m = Modulus::from_kappa(0.6);
  EXPECT_EQ(forward_integral(0, m), 0);
  EXPECT_NEAR(forward_integral(std::numbers::pi / 2, m), kOmega, 1e-13);
  EXPECT_NEAR(forward_integral(std::numbers::pi, m), 2 * kOmega, 1e-13);
  EXPECT_NEAR(forward_integral(-1.0, m), -forward_integral(1.0, m), 1e-15);
}

TEST(Phi, Values) {
  const auto m = Modulus::from_kappa(0.6);
  EXPECT_EQ(phi(0, m), 0);
  EXPECT_NEAR(phi(kOmega, m), std::numbers::pi / 2, 1e-12);
  EXPECT_NEAR(phi(2 * kOmega, m), std::numbers::pi, 1e-12);
  EXPECT_NEAR(forward_integral(phi(0.9, m), m), 0.9, 1e-13);
}

TEST(Phi, SinFlipsOverTwoOmega) {
  const auto m = Modulus::from_kappa(0.6);
  Sampler s(21);
  for (int i = 0; i < 100; ++i) {
    const double u = s.uniform(-3 * kOmega, 3 * kOmega);
    EXPECT_NEAR(std::sin(phi(u + 2 * kOmega, m)), -std::sin(phi(u, m)), 1e-10);
  }
}

TEST(DReal, Values) {
  const auto m = Modulus::from_kappa(0.6);
  EXPECT_EQ(d_real(0, m), 1.0);
  EXPECT_NEAR(d_real(kOmega, m), 0.8, 1e-12);
  EXPECT_NEAR(d_real(2 * kOmega, m), 1.0, 1e-12);
}

TEST(DReal, RangeOnRealAxis) {
  for (double k : {0.1, 0.6, 0.95}) {
    const auto m = Modulus::from_kappa(k);
    Sampler s(22);
    for (int i = 0; i < 200; ++i) {
      const double d = d_real(s.uniform(-10, 10), m);
      EXPECT_GE(d, m.lambda() - 1e-12);
      EXPECT_LE(d, 1 + 1e-12);
    }
  }
}

TEST(DReal, OdeResidualCentralDifference) {
  for (double k : {0.3, 0.6, 0.9}) {
    const auto m = Modulus::from_kappa(k);
    const double w = make_context(k).periods().half_real;
    const double l = m.lambda();
    Sampler s(23);
    auto d = [&](double u) { return d_real(u, m); };
    for (int i = 0; i < 200; ++i) {
      const double u = s.uniform(-2 * w, 2 * w);
      const double v = d(u);
      const double slope = central_difference(d, u, 1e-6);
      EXPECT_LE(std::abs(slope * slope - 2 * (1 - v) * (v * v - l * l)), 1e-7) << "kappa=" << k << " u=" << u;
    }
  }
}

TEST(Dd, SpecialValues) {
  const auto ctx = make_context(0.6);
  EXPECT_EQ(dd(0.0, ctx), 1.0);
  EXPECT_NEAR(std::abs(dd(ctx.omega(), ctx) - 0.8), 0, 1e-12);
  EXPECT_NEAR(std::abs(dd(ctx.omega() + ctx.omega_prime(), ctx) + 0.8), 0, 1e-12);
  EXPECT_NEAR(std::abs(dd(0.7, ctx) - d_real(0.7, ctx.mod)), 0, 1e-9);
  EXPECT_THROW(dd(ctx.omega_prime(), ctx), pole_error);
}

TEST(Dd, WeierstrassFormResidual) {
  for (double k : {0.3, 0.6, 0.9}) {
    const auto ctx = make_context(k);
    const auto& pp = ctx.periods();
    Sampler s(24);
    int n = 0;
    while (n < 200) {
      const complex z = s.in_cell(pp);
      if (lattice_distance(z, ctx.omega_prime(), pp) < 0.05 * pp.min_half()) continue;
      const complex p = ctx.p.value(z);
      EXPECT_LE(std::abs((1.0 - dd(z, ctx)) * (1.0 / 3 + p) - k * k / 2), 1e-9);
      ++n;
    }
  }
}

TEST(Dd, Periodicity) {
  const auto ctx = make_context(0.6);
  const auto& pp = ctx.periods();
  Sampler s(25);
  for (int i = 0; i < 100; ++i) {
    const complex z = s.in_cell(pp);
    if (lattice_distance(z, ctx.omega_prime(), pp) < 0.05 * pp.min_half()) continue;
    const complex v = dd(z, ctx);
    EXPECT_LE(std::abs(dd(z + 2.0 * ctx.omega(), ctx) - v), 1e-9);
    EXPECT_LE(std::abs(dd(z + 2.0 * ctx.omega_prime(), ctx) - v), 1e-9);
  }
}

TEST(Dd, MatchesRealRouteOnRealAxis) {
  const auto ctx = make_context(0.6);
  for (int i = -40; i <= 40; ++i) {
    const double u = i * 0.1;
    EXPECT_NEAR(dd(u, ctx).real(), d_real(u, ctx.mod), 1e-9);
    EXPECT_EQ(dd(u, ctx).imag(), 0.0);
  }
}

TEST(Omega, ThreeWaysAgree) {
  for (double k : {0.1, 0.3, 0.6, 0.9}) {
    const auto e = omega_three_ways(Modulus::from_kappa(k));
    EXPECT_NEAR(e.closed, e.via_integral, 1e-8);
    EXPECT_NEAR(e.closed, e.via_trig, 1e-8);
    EXPECT_NEAR(e.via_integral, e.via_trig, 1e-8);
  }
  const auto e = omega_three_ways(Modulus::from_kappa(0.6));
  EXPECT_NEAR(e.closed, kOmega, 1e-14);
}

TEST(Omega, TrigIntegralEvaluation) {
  for (double k : {0.2, 0.6, 0.85}) {
    const auto m = Modulus::from_kappa(k);
    const double closed = std::numbers::pi / (2 * std::numbers::sqrt2) * complete_F(k * k);
    EXPECT_NEAR(modular_angle_integral(m.alpha()), closed, 1e-8);
  }
  EXPECT_NEAR(modular_angle_integral(std::asin(0.6)), 1.20552889558779415686, 1e-11);
  EXPECT_THROW(modular_angle_integral(0), domain_error);
}

TEST(OmegaPrime, Values) {
  EXPECT_NEAR(omega_prime(Modulus::from_kappa(0.6)), kOmegaPrime, 1e-10);
  const auto self = Modulus::from_kappa(1 / std::numbers::sqrt2);
  const double w = omega_three_ways(self).closed;
  EXPECT_NEAR(omega_prime(self) / w, std::numbers::sqrt2, 1e-9);
}

TEST(PeriodRatio, Values) {
  const complex self = period_ratio(Modulus::from_kappa(1 / std::numbers::sqrt2));
  EXPECT_NEAR(self.real(), 0, 0);
  EXPECT_NEAR(self.imag(), std::numbers::sqrt2, 1e-14);
  EXPECT_NEAR(period_ratio(Modulus::from_kappa(0.6)).imag(), 1.56340192269611150695, 1e-14);
  const auto ctx = make_context(0.6);
  EXPECT_NEAR(ctx.periods().half_imag_mag / ctx.periods().half_real, period_ratio(ctx.mod).imag(), 1e-13);
}

#pragma once

// The signature-four analogue dd of Jacobi's dn.
//
// On the real line, dd(u) = cos(arcsin(kappa sin phi(u))) where phi inverts
// T -> int_0^T F(1/4, 3/4; 1/2; kappa^2 sin^2 t) dt. On the plane it is
// evaluated from its coperiodic Weierstrass function p with
// g2 = (3 lambda^2 + 1) / 3, g3 = (9 lambda^2 - 1) / 27:
//
//   (1 - dd)(1/3 + p) = kappa^2 / 2.
//
// The real-line construction is kept as an independent route for checking
// the planar one.

#include <cmath>
#include <numbers>
#include <string>

#include "sig4/errors.hpp"
#include "sig4/hypergeom.hpp"
#include "sig4/numeric_core.hpp"
#include "sig4/weierstrass.hpp"

namespace sig4 {

/// Modulus kappa in (0, 1) with its complement and modular angles.
class Modulus {
 public:
  static Modulus from_kappa(double kappa) {
    if (!(kappa > 0 && kappa < 1)) {
      throw domain_error("modulus kappa must lie in (0, 1), got " + std::to_string(kappa));
    }
    return Modulus(kappa);
  }

  double kappa() const { return kappa_; }
  double lambda() const { return lambda_; }
  /// Acute angle with sin(alpha) = kappa.
  double alpha() const { return alpha_; }
  /// Complementary angle pi/2 - alpha, so sin(beta) = lambda.
  double beta() const { return std::numbers::pi / 2 - alpha_; }

 private:
  explicit Modulus(double kappa)
      : kappa_(kappa), lambda_(std::sqrt((1 - kappa) * (1 + kappa))), alpha_(std::asin(kappa)) {}

  double kappa_;
  double lambda_;
  double alpha_;
};

inline Invariants dd_invariants(const Modulus& mod) {
  const double l2 = mod.lambda() * mod.lambda();
  return {(3 * l2 + 1) / 3, (9 * l2 - 1) / 27};
}

struct DDContext {
  Modulus mod;
  Weierstrass p;

  const Invariants& invariants() const { return p.invariants(); }
  /// (omega, |omega'|).
  const PeriodPair& periods() const { return p.periods(); }
  complex omega() const { return periods().real_half(); }
  complex omega_prime() const { return periods().imag_half(); }
};

inline DDContext make_context(double kappa) {
  const Modulus mod = Modulus::from_kappa(kappa);
  DDContext ctx{mod, Weierstrass(dd_invariants(mod))};
  const double k2 = kappa * kappa;
  const double expected = k2 * k2 * mod.lambda() * mod.lambda();
  if (std::abs(ctx.invariants().discriminant() - expected) > 1e-12) {
    throw domain_error("make_context: discriminant identity violated");
  }
  return ctx;
}

namespace detail {

// F(1/4, 3/4; 1/2; kappa^2 sin^2 t) through its closed form cos(psi/2) / cos(psi)
// with sin(psi) = kappa sin(t); cos(psi) >= lambda > 0 on the whole line.
inline double forward_integrand(double t, double k2) {
  const double s = std::sin(t);
  const double c = std::sqrt(1 - k2 * s * s);
  return std::sqrt((1 + c) / 2) / c;
}

// int_0^{pi/2} of the forward integrand; every quarter-turn panel has this
// value since the integrand is even and pi-periodic.
inline double forward_panel(double k2, double tol) {
  return integrate([k2](double t) { return forward_integrand(t, k2); },
                   {0, std::numbers::pi / 2}, tol);
}

inline constexpr double kForwardTol = 1e-15;

}  // namespace detail

/// int_0^T F(1/4, 3/4; 1/2; kappa^2 sin^2 t) dt, integrated panel by panel
/// between multiples of pi/2.
inline double forward_integral(double T, const Modulus& mod) {
  if (T == 0) return 0;
  if (T < 0) return -forward_integral(-T, mod);
  const double k2 = mod.kappa() * mod.kappa();
  constexpr double kQuarter = std::numbers::pi / 2;
  const double panels = std::floor(T / kQuarter);
  const double start = panels * kQuarter;
  double total = panels > 0 ? panels * detail::forward_panel(k2, detail::kForwardTol) : 0;
  if (T > start) {
    total += integrate([k2](double t) { return detail::forward_integrand(t, k2); }, {start, T},
                       detail::kForwardTol);
  }
  return total;
}

/// Inverse of forward_integral. Uses phi(u + 2 omega) = phi(u) + pi to move
/// u into [0, 2 omega), then Newton on [0, pi] with the integrand as
/// derivative (bounded below by 1).
inline double phi(double u, const Modulus& mod) {
  if (u == 0) return 0;
  const double k2 = mod.kappa() * mod.kappa();
  const double omega = detail::forward_panel(k2, detail::kForwardTol);
  const double turns = std::floor(u / (2 * omega));
  const double r = u - turns * 2 * omega;
  const double root = find_root(
      [&](double T) { return forward_integral(T, mod) - r; },
      [&](double T) { return detail::forward_integrand(T, k2); },
      {0, std::numbers::pi}, 0.0);
  return turns * std::numbers::pi + root;
}

/// The real function d = cos(arcsin(kappa sin phi(u))), valued in [lambda, 1].
inline double d_real(double u, const Modulus& mod) {
  const double s = mod.kappa() * std::sin(phi(u, mod));
  return std::sqrt((1 - s) * (1 + s));
}

/// dd(z) = 1 - (kappa^2 / 2) / (1/3 + p(z)). At lattice points p is
/// infinite and dd takes the value 1. Throws pole_error on the class of
/// omega', where 1/3 + p vanishes.
inline complex dd(complex z, const DDContext& ctx) {
  const auto v = ctx.p.try_evaluate(z);
  if (!v) return 1.0;
  const complex den = 1.0 / 3 + v->value;
  if (std::abs(den) < 1e-12) throw pole_error("dd: pole (argument congruent to omega')");
  const double k = ctx.mod.kappa();
  return 1.0 - (k * k / 2) / den;
}

/// int_0^angle cos(theta/2) / sqrt(cos 2 theta - cos 2 angle) d theta.
/// The upper endpoint singularity is integrable; the denominator is taken
/// in product form 2 sin(angle + theta) sin(angle - theta) so it stays
/// accurate as theta approaches the angle.
inline double modular_angle_integral(double angle, double tol = kDefaultTol) {
  if (!(angle > 0 && angle < std::numbers::pi / 2)) {
    throw domain_error("modular_angle_integral: angle must lie in (0, pi/2)");
  }
  return integrate(
      [angle](double theta, double, double to_angle) {
        const double gap = 2 * std::sin(angle + theta) * std::sin(to_angle);
        return std::cos(theta / 2) / std::sqrt(gap);
      },
      {0, angle}, tol);
}

struct OmegaEstimates {
  double closed;        ///< (pi/2) F(1/4, 3/4; 1; kappa^2)
  double via_integral;  ///< forward integral up to pi/2
  double via_trig;      ///< sqrt2 times the modular-angle integral at alpha
};

inline OmegaEstimates omega_three_ways(const Modulus& mod) {
  const double k2 = mod.kappa() * mod.kappa();
  return {std::numbers::pi / 2 * complete_F(k2),
          forward_integral(std::numbers::pi / 2, mod),
          std::numbers::sqrt2 * modular_angle_integral(mod.alpha())};
}

/// |omega'| = 2 times the modular-angle integral at beta.
inline double omega_prime(const Modulus& mod) { return 2 * modular_angle_integral(mod.beta()); }

/// omega' / omega = i sqrt2 F(1/4, 3/4; 1; lambda^2) / F(1/4, 3/4; 1; kappa^2).
inline complex period_ratio(const Modulus& mod) {
  const double l2 = mod.lambda() * mod.lambda();
  const double k2 = mod.kappa() * mod.kappa();
  return {0, std::numbers::sqrt2 * complete_F(l2) / complete_F(k2)};
}

}  // namespace sig4

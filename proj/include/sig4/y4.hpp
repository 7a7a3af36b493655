#pragma once

// Elliptic solutions of (y')^2 = T4(y) - (1 - 2 lambda^2) = 8y^4 - 8y^2 + 2 lambda^2
// starting at a root of the right-hand side.
//
// With kappa = sqrt(1 - lambda^2) and P = p(.; G2, G3),
// G2 = (16/3)(1 + 3 lambda^2), G3 = (64/27)(1 - 9 lambda^2):
//
//   y4+(z) = mu+ [1 + 4 kappa / (P(z) - (4/3 + 2 kappa))],  mu+ = sqrt((1 + kappa)/2)
//
// and y4- is the same expression with kappa replaced by -kappa.

#include <cmath>
#include <string>

#include "sig4/errors.hpp"
#include "sig4/numeric_core.hpp"
#include "sig4/weierstrass.hpp"

namespace sig4 {

inline constexpr double chebyshev_T4(double t) {
  const double t2 = t * t;
  return 8 * t2 * t2 - 8 * t2 + 1;
}

inline Invariants y4_invariants(double lambda) {
  const double l2 = lambda * lambda;
  return {16.0 / 3 * (1 + 3 * l2), 64.0 / 27 * (1 - 9 * l2)};
}

struct Y4Context {
  double parameter;  ///< the lambda in the differential equation
  double kappa;      ///< sqrt(1 - parameter^2)
  double mu_plus;    ///< sqrt((1 + kappa)/2)
  double mu_minus;   ///< sqrt((1 - kappa)/2)
  Weierstrass P;

  const Invariants& invariants() const { return P.invariants(); }
  /// (Omega, |Omega'|).
  const PeriodPair& periods() const { return P.periods(); }
  complex Omega() const { return periods().real_half(); }
  complex Omega_prime() const { return periods().imag_half(); }

  /// Right-hand side 8y^4 - 8y^2 + 2 lambda^2 of the differential equation.
  template <class T>
  T rhs(T y) const {
    const T y2 = y * y;
    return 8.0 * y2 * y2 - 8.0 * y2 + 2 * parameter * parameter;
  }
};

/// Context for parameter lambda in (0, 1). Passing kappa here instead gives
/// the kappa-parameterized family, whose own "kappa" field is then lambda.
inline Y4Context make_y4_context(double lambda) {
  if (!(lambda > 0 && lambda < 1)) {
    throw domain_error("y4 parameter must lie in (0, 1), got " + std::to_string(lambda));
  }
  const double kappa = std::sqrt((1 - lambda) * (1 + lambda));
  return {lambda, kappa, std::sqrt((1 + kappa) / 2), std::sqrt((1 - kappa) / 2),
          Weierstrass(y4_invariants(lambda))};
}

namespace detail {

inline complex y4_branch(complex z, const Y4Context& ctx, double signed_kappa, double mu) {
  const auto v = ctx.P.try_evaluate(z);
  if (!v) return mu;
  const complex den = v->value - (4.0 / 3 + 2 * signed_kappa);
  if (std::abs(den) < 1e-12) throw pole_error("y4: pole");
  return mu * (1.0 + 4 * signed_kappa / den);
}

}  // namespace detail

/// Solution with y(0) = mu+. Poles at +-Omega/2 modulo the lattice.
inline complex y4_plus(complex z, const Y4Context& ctx) {
  return detail::y4_branch(z, ctx, ctx.kappa, ctx.mu_plus);
}

/// Solution with y(0) = mu-, by the kappa -> -kappa substitution.
inline complex y4_minus(complex z, const Y4Context& ctx) {
  return detail::y4_branch(z, ctx, -ctx.kappa, ctx.mu_minus);
}

struct ZeroPole {
  complex zero;  ///< Omega/2 + Omega'
  complex pole;  ///< Omega/2
};

inline ZeroPole y4_zeros_poles(const Y4Context& ctx) {
  const complex half = ctx.Omega() / 2.0;
  return {half + ctx.Omega_prime(), half};
}

/// z -> y4+(z + Omega/2 + Omega'), the solution with y(0) = 0. Its negative
/// is the other one.
inline complex y4_zero_ivp_solution(complex z, const Y4Context& ctx) {
  return y4_plus(z + y4_zeros_poles(ctx).zero, ctx);
}

}  // namespace sig4

#pragma once

// Elliptic solution of (w')^2 = f(w), w(0) = w0, for a quartic (or cubic) f
// with a simple real root w0:
//
//   w(z) = w0 + (f'(w0)/4) / (p(z; g2, g3) - f''(w0)/24)
//
// where g2, g3 are the quadrinvariant and cubinvariant of f. Substituting
// r = 1/(w - w0), q = A3 r, p = q + A2/2 turns the quartic equation into
// p'^2 = 4p^3 - g2 p - g3, with A0..A3 the Taylor coefficients of f at w0.

#include <algorithm>
#include <cmath>
#include <string>

#include "sig4/errors.hpp"
#include "sig4/numeric_core.hpp"
#include "sig4/weierstrass.hpp"

namespace sig4 {

/// f(w) = a0 w^4 + 4 a1 w^3 + 6 a2 w^2 + 4 a3 w + a4.
struct QuarticCoefficients {
  double a0 = 0;
  double a1 = 0;
  double a2 = 0;
  double a3 = 0;
  double a4 = 0;

  /// From plain coefficients c4 w^4 + c3 w^3 + c2 w^2 + c1 w + c0.
  static constexpr QuarticCoefficients from_monomial(double c4, double c3, double c2, double c1,
                                                     double c0) {
    return {c4, c3 / 4, c2 / 6, c1 / 4, c0};
  }

  template <class T>
  T operator()(T w) const {
    return (((a0 * w + 4 * a1) * w + 6 * a2) * w + 4 * a3) * w + a4;
  }
  template <class T>
  T derivative(T w) const {
    return ((4 * a0 * w + 12 * a1) * w + 12 * a2) * w + 4 * a3;
  }
  template <class T>
  T second_derivative(T w) const {
    return (12 * a0 * w + 24 * a1) * w + 12 * a2;
  }

  /// Same polynomial in v = w - shift, i.e. the coefficients of f(v + shift).
  QuarticCoefficients shifted(double shift) const {
    const double s = shift;
    return {a0, a0 * s + a1, (a0 * s + 2 * a1) * s + a2, ((a0 * s + 3 * a1) * s + 3 * a2) * s + a3,
            (*this)(s)};
  }
};

inline constexpr double quadrinvariant(const QuarticCoefficients& q) {
  return q.a0 * q.a4 - 4 * q.a1 * q.a3 + 3 * q.a2 * q.a2;
}

inline constexpr double cubinvariant(const QuarticCoefficients& q) {
  return q.a0 * q.a2 * q.a4 + 2 * q.a1 * q.a2 * q.a3 - q.a2 * q.a2 * q.a2 - q.a0 * q.a3 * q.a3 -
         q.a1 * q.a1 * q.a4;
}

inline constexpr Invariants invariants_of(const QuarticCoefficients& q) {
  return {quadrinvariant(q), cubinvariant(q)};
}

/// Coefficients of f about a root w0:
/// f(w) = A0 (w-w0)^4 + 4 A1 (w-w0)^3 + 6 A2 (w-w0)^2 + 4 A3 (w-w0).
struct TaylorShift {
  double A0;
  double A1;
  double A2;
  double A3;

  /// 3 A2^2 - 4 A1 A3, which equals the quadrinvariant.
  constexpr double quadrinvariant() const { return 3 * A2 * A2 - 4 * A1 * A3; }
  /// 2 A1 A2 A3 - A2^3 - A0 A3^2, which equals the cubinvariant.
  constexpr double cubinvariant() const { return 2 * A1 * A2 * A3 - A2 * A2 * A2 - A0 * A3 * A3; }
};

inline TaylorShift taylor_shift(const QuarticCoefficients& q, double w0) {
  if (q.a0 == 0 && q.a1 == 0 && q.a2 == 0 && q.a3 == 0) {
    throw domain_error("taylor_shift: quartic has degree < 1");
  }
  const double x = std::abs(w0);
  const double value_scale = std::max(
      std::abs(q.a0) * x * x * x * x + 4 * std::abs(q.a1) * x * x * x + 6 * std::abs(q.a2) * x * x +
          4 * std::abs(q.a3) * x + std::abs(q.a4),
      1e-300);
  const double slope_scale = std::max(4 * std::abs(q.a0) * x * x * x + 12 * std::abs(q.a1) * x * x +
                                          12 * std::abs(q.a2) * x + 4 * std::abs(q.a3),
                                      1e-300);
  if (std::abs(q(w0)) > 1e-10 * value_scale) {
    throw domain_error("taylor_shift: w0 is not a root");
  }
  if (std::abs(q.derivative(w0)) < 1e-10 * slope_scale) {
    throw domain_error("taylor_shift: root not simple");
  }
  const auto s = q.shifted(w0);
  return {s.a0, s.a1, s.a2, s.a3};
}

class QuarticIvpSolution {
 public:
  QuarticIvpSolution(double w0, TaylorShift shift, Invariants inv)
      : w0_(w0), shift_(shift), wp_(inv) {}

  /// w(z); at lattice points p is infinite and w takes the value w0.
  complex operator()(complex z) const {
    const auto v = wp_.try_evaluate(z);
    if (!v) return w0_;
    const complex den = v->value - shift_.A2 / 2;
    if (std::abs(den) < 1e-12) throw pole_error("quartic ivp solution: pole");
    return w0_ + shift_.A3 / den;
  }

  double initial_value() const { return w0_; }
  const TaylorShift& taylor() const { return shift_; }
  const Invariants& invariants() const { return wp_.invariants(); }
  const PeriodPair& periods() const { return wp_.periods(); }
  const Weierstrass& weierstrass() const { return wp_; }

 private:
  double w0_;
  TaylorShift shift_;
  Weierstrass wp_;
};

inline QuarticIvpSolution solve_quartic_ivp(const QuarticCoefficients& q, double w0) {
  const TaylorShift shift = taylor_shift(q, w0);
  const Invariants inv = invariants_of(q);
  if (!(inv.discriminant() > 0)) {
    throw domain_error("solve_quartic_ivp: unsupported lattice (invariants need positive discriminant)");
  }
  return QuarticIvpSolution(w0, shift, inv);
}

/// (w')^2 = 2 (1 - w)(w^2 - lambda^2), the equation satisfied by dd.
inline constexpr QuarticCoefficients dd_cubic(double lambda) {
  const double l2 = lambda * lambda;
  return QuarticCoefficients::from_monomial(0, -2, 2, 2 * l2, -2 * l2);
}

/// (y')^2 = 8y^4 - 8y^2 + 2 lambda^2, the equation satisfied by y4.
inline constexpr QuarticCoefficients y4_quartic(double lambda) {
  return QuarticCoefficients::from_monomial(8, 0, -8, 0, 2 * lambda * lambda);
}

}  // namespace sig4

#pragma once

// Shared numeric plumbing: complex scalar, double-exponential quadrature,
// bracketed root finding and the depressed cubic 4t^3 - g2 t - g3.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>

#include "sig4/errors.hpp"

namespace sig4 {

using complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-12;

struct Interval {
  double lo;
  double hi;

  constexpr double width() const { return hi - lo; }
  constexpr bool contains(double x) const { return lo <= x && x <= hi; }
};

namespace detail {

inline void require_interval(const Interval& iv, const char* who) {
  if (!(iv.lo < iv.hi)) {
    throw domain_error(std::string(who) + ": interval requires lo < hi");
  }
}

// Calls f either as f(x) or, when it accepts them, as f(x, x - lo, hi - x)
// with the endpoint distances computed without cancellation.
template <class F>
double call_integrand(F& f, double x, double dist_lo, double dist_hi) {
  if constexpr (std::is_invocable_r_v<double, F&, double, double, double>) {
    return f(x, dist_lo, dist_hi);
  } else {
    return f(x);
  }
}

template <class F>
inline constexpr bool kDistanceAware =
    std::is_invocable_r_v<double, F&, double, double, double>;

}  // namespace detail

/// Tanh-sinh (double-exponential) quadrature of f over iv.
///
/// The integrand may be a plain `double(double)` or a
/// `double(double x, double x_minus_lo, double hi_minus_x)`. The second form
/// receives the distances to the endpoints exactly, which is what lets
/// integrands like 1/sqrt(hi - x) be resolved at the upper end, where x
/// itself rounds onto hi long before the weights underflow.
///
/// Refines the step by halving up to level 12. Convergence is declared when
/// two consecutive levels agree to tol, or to the roundoff floor of the
/// abscissa sum, whichever is larger. Throws convergence_error otherwise.
template <class F>
double integrate(F&& f, Interval iv, double tol = kDefaultTol) {
  detail::require_interval(iv, "integrate");
  if (!(tol > 0)) throw domain_error("integrate: tol must be positive");

  constexpr int kMaxLevel = 12;
  constexpr double kTMax = 6.0;
  constexpr double kHalfPi = std::numbers::pi / 2;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr bool kDistanceAware = detail::kDistanceAware<std::remove_reference_t<F>>;

  const double half = iv.width() / 2;
  const double mid = iv.lo + half;

  // Accumulates w*(f(lo + half c) + f(hi - half c)) at t = k h for the k
  // selected by `start`/`stride`.
  double abs_sum = 0;
  auto sweep = [&](double h, int start, int stride) {
    double sum = 0;
    for (int k = start;; k += stride) {
      const double t = k * h;
      if (t > kTMax) break;
      const double u = kHalfPi * std::sinh(t);
      const double c = 2 / (1 + std::exp(2 * u));  // 1 - tanh(u)
      const double cu = std::cosh(u);
      const double w = kHalfPi * std::cosh(t) / (cu * cu);
      const double d = half * c;
      if (d == 0 || w == 0) break;
      const double x_lo = iv.lo + d;
      const double x_hi = iv.hi - d;
      double term = 0;
      if (kDistanceAware || x_lo != iv.lo) term += detail::call_integrand(f, x_lo, d, iv.width() - d);
      if (kDistanceAware || x_hi != iv.hi) term += detail::call_integrand(f, x_hi, iv.width() - d, d);
      sum += w * term;
      abs_sum += w * std::abs(term);
    }
    return sum;
  };

  double h = 1;
  const double f_mid = detail::call_integrand(f, mid, half, half);
  double sum = kHalfPi * f_mid + sweep(h, 1, 1);
  abs_sum += kHalfPi * std::abs(f_mid);
  double estimate = half * h * sum;

  for (int level = 1; level <= kMaxLevel; ++level) {
    h /= 2;
    sum += sweep(h, 1, 2);
    const double next = half * h * sum;
    const double diff = std::abs(next - estimate);
    estimate = next;
    if (!std::isfinite(estimate)) {
      throw convergence_error("integrate: non-finite integrand value");
    }
    const double floor = 64 * kEps * half * h * abs_sum;
    if (level >= 3 && diff <= std::max(tol, floor)) return estimate;
  }
  throw convergence_error("integrate: no convergence after level " +
                          std::to_string(kMaxLevel) + " (last estimate " +
                          std::to_string(estimate) + ")");
}

namespace detail {

template <class F>
std::pair<double, double> bracket_values(F& f, Interval bracket) {
  require_interval(bracket, "find_root");
  const double flo = f(bracket.lo);
  const double fhi = f(bracket.hi);
  if (std::signbit(flo) == std::signbit(fhi) && flo != 0 && fhi != 0) {
    throw domain_error("find_root: no sign change in bracket");
  }
  return {flo, fhi};
}

}  // namespace detail

/// Safeguarded Newton iteration on a sign-changing bracket. Falls back to
/// bisection whenever the Newton step leaves the current bracket or fails
/// to halve it. Stops when |f(x)| <= tol or when the step reaches machine
/// precision, so tol = 0 asks for a fully converged root.
template <class F, class DF>
double find_root(F&& f, DF&& df, Interval bracket, double tol = kDefaultTol) {
  auto [flo, fhi] = detail::bracket_values(f, bracket);
  if (flo == 0) return bracket.lo;
  if (fhi == 0) return bracket.hi;
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  double lo = bracket.lo, hi = bracket.hi;
  const bool increasing = flo < 0;
  double x = lo + (hi - lo) * (-flo / (fhi - flo));
  double prev_step = hi - lo;
  for (int iter = 0; iter < 200; ++iter) {
    const double fx = f(x);
    if (std::abs(fx) <= tol) return x;
    if ((fx < 0) == increasing) lo = x; else hi = x;

    const double dfx = df(x);
    double next = dfx != 0 ? x - fx / dfx : lo + (hi - lo) / 2;
    double step = std::abs(next - x);
    if (!(next > lo && next < hi) || step > prev_step / 2) {
      next = lo + (hi - lo) / 2;
      step = std::abs(next - x);
    }
    prev_step = step;
    x = next;
    if (step <= 4 * kEps * std::max(1.0, std::abs(x)) || hi - lo <= 4 * kEps * std::max(1.0, std::abs(x))) {
      return x;
    }
  }
  throw convergence_error("find_root: iteration limit reached");
}

/// Derivative-free variant: Illinois false position with bisection fallback.
template <class F>
double find_root(F&& f, Interval bracket, double tol = kDefaultTol) {
  auto [flo, fhi] = detail::bracket_values(f, bracket);
  if (flo == 0) return bracket.lo;
  if (fhi == 0) return bracket.hi;
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  double lo = bracket.lo, hi = bracket.hi;
  int side = 0;
  for (int iter = 0; iter < 400; ++iter) {
    double x = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(x > lo && x < hi) || iter % 8 == 7) x = lo + (hi - lo) / 2;
    const double fx = f(x);
    if (std::abs(fx) <= tol) return x;
    if (std::signbit(fx) == std::signbit(flo)) {
      lo = x, flo = fx;
      if (side == -1) fhi /= 2;
      side = -1;
    } else {
      hi = x, fhi = fx;
      if (side == 1) flo /= 2;
      side = 1;
    }
    if (hi - lo <= 4 * kEps * std::max(1.0, std::abs(x))) return x;
  }
  throw convergence_error("find_root: iteration limit reached");
}

/// Real roots of 4t^3 - g2 t - g3 = 0, sorted descending, by the
/// trigonometric (Viete) form t = r cos(theta), r = sqrt(g2/3),
/// cos(3 theta) = g3 / r^3. Requires g2^3 - 27 g3^2 > 0.
inline std::array<double, 3> solve_depressed_cubic(double g2, double g3) {
  const double disc = g2 * g2 * g2 - 27 * g3 * g3;
  if (!(disc > 0)) {
    throw domain_error("solve_depressed_cubic: discriminant g2^3 - 27 g3^2 must be positive");
  }
  const double r = std::sqrt(g2 / 3);
  const double angle = std::acos(std::clamp(g3 / (r * r * r), -1.0, 1.0));
  constexpr double kTwoPi = 2 * std::numbers::pi;
  std::array<double, 3> roots;
  for (int k = 0; k < 3; ++k) {
    double t = r * std::cos((angle - kTwoPi * k) / 3);
    const double slope = 12 * t * t - g2;
    if (slope != 0) t -= (4 * t * t * t - g2 * t - g3) / slope;
    roots[k] = t;
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

}  // namespace sig4

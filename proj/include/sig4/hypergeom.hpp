#pragma once

// Gauss hypergeometric 2F1 on [0, 1) by direct power series.

#include <cmath>
#include <string>

#include "sig4/errors.hpp"

namespace sig4 {

struct HypParams {
  double a;
  double b;
  double c;
};

/// The two parameter triples of the signature-four theory.
inline constexpr HypParams kQuarterHalf{0.25, 0.75, 0.5};
inline constexpr HypParams kQuarterOne{0.25, 0.75, 1.0};

inline constexpr int kDefaultSeriesTerms = 4096;

/// Sum_{n>=0} (a)_n (b)_n / ((c)_n n!) x^n, truncated once a term falls
/// below 1e-16 of the partial sum. Throws convergence_error if that has not
/// happened within max_terms (x too close to 1).
inline double gauss_2f1(HypParams p, double x, int max_terms = kDefaultSeriesTerms) {
  if (p.c <= 0 && p.c == std::floor(p.c)) {
    throw domain_error("gauss_2f1: c must not be a non-positive integer");
  }
  if (!(x >= 0 && x < 1)) {
    throw domain_error("gauss_2f1: argument must lie in [0, 1), got " + std::to_string(x));
  }
  double term = 1;
  double sum = 1;
  for (int n = 0; n < max_terms; ++n) {
    term *= (p.a + n) * (p.b + n) / ((p.c + n) * (n + 1)) * x;
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) return sum;
  }
  throw convergence_error("gauss_2f1: series did not converge in " + std::to_string(max_terms) +
                          " terms at x = " + std::to_string(x) + " (precision loss near x = 1)");
}

/// Closed form F(1/4, 3/4; 1/2; sin^2 z) = cos(z/2) / cos(z).
inline double f_half_closed(double z) {
  const double c = std::cos(z);
  if (std::abs(c) < 1e-14) throw pole_error("f_half_closed: cos z vanishes");
  return std::cos(z / 2) / c;
}

/// F(1/4, 3/4; 1; m), the complete value behind every half-period formula.
inline double complete_F(double m) { return gauss_2f1(kQuarterOne, m); }

}  // namespace sig4

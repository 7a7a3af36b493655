#pragma once

// Weierstrass p-function for real rectangular lattices (real invariants with
// positive discriminant).
//
// Half-periods come from the arithmetic-geometric mean. Evaluation reduces the
// argument into the centred period cell, moves it next to the nearest
// half-period with the addition formula p(u + w_i) = e_i + (e_i - e_j)(e_i - e_k)
// / (p(u) - e_i), and sums the Laurent expansion at the origin for the small
// remainder u. Only for very elongated cells is u still too large; it is then
// halved and doubled back with the duplication formula, carrying p and p'
// together.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "sig4/errors.hpp"
#include "sig4/numeric_core.hpp"

namespace sig4 {

struct Invariants {
  double g2;
  double g3;

  constexpr double discriminant() const { return g2 * g2 * g2 - 27 * g3 * g3; }
};

/// Values of p at the half-periods, e1 > e2 > e3, summing to zero.
struct MidpointTriple {
  double e1;
  double e2;
  double e3;
};

/// Fundamental half-periods of a rectangular lattice: half_real on the real
/// axis and i * half_imag_mag on the imaginary axis.
struct PeriodPair {
  double half_real;
  double half_imag_mag;

  constexpr complex real_half() const { return {half_real, 0}; }
  constexpr complex imag_half() const { return {0, half_imag_mag}; }
  constexpr double min_half() const { return half_real < half_imag_mag ? half_real : half_imag_mag; }
};

namespace detail {

inline void require_rectangular(const Invariants& inv, const char* who) {
  if (!std::isfinite(inv.g2) || !std::isfinite(inv.g3) || !(inv.discriminant() > 0)) {
    throw domain_error(std::string(who) +
                       ": invariants must be real with positive discriminant g2^3 - 27 g3^2");
  }
}

// Index n of the cell containing x for the half-open cell (-h, h] of width
// 2h, with a little slack so that points sitting on a cell edge in exact
// arithmetic land on the positive edge.
inline double cell_index(double x, double half) {
  return std::ceil(x / (2 * half) - 0.5 - 1e-12);
}

}  // namespace detail

inline double agm(double a, double b) {
  for (int i = 0; i < 64; ++i) {
    const double an = (a + b) / 2;
    const double bn = std::sqrt(a * b);
    if (std::abs(an - bn) <= 2 * std::numeric_limits<double>::epsilon() * an) return (an + bn) / 2;
    a = an;
    b = bn;
  }
  return (a + b) / 2;
}

/// Complete elliptic integral of the first kind K(m), parameter m in [0, 1).
inline double complete_elliptic_k(double m) {
  if (!(m >= 0 && m < 1)) throw domain_error("complete_elliptic_k: m must lie in [0, 1)");
  return std::numbers::pi / (2 * agm(1, std::sqrt(1 - m)));
}

inline MidpointTriple midpoints(Invariants inv) {
  detail::require_rectangular(inv, "midpoints");
  const auto r = solve_depressed_cubic(inv.g2, inv.g3);
  return {r[0], r[1], r[2]};
}

inline PeriodPair half_periods(Invariants inv) {
  const auto e = midpoints(inv);
  const double spread = e.e1 - e.e3;
  const double m = (e.e2 - e.e3) / spread;
  const double scale = std::sqrt(spread);
  return {complete_elliptic_k(m) / scale, complete_elliptic_k(1 - m) / scale};
}

/// p(half_real / 2) and p(half_real / 2 + i half_imag_mag), in that order:
/// e1 +- sqrt((e1 - e2)(e1 - e3)).
inline std::pair<double, double> wp_quarter_values(Invariants inv) {
  const auto e = midpoints(inv);
  const double s = std::sqrt((e.e1 - e.e2) * (e.e1 - e.e3));
  return {e.e1 + s, e.e1 - s};
}

/// z minus the integer combination of the full periods 2 half_real and
/// 2i half_imag_mag that lands it in the centred cell.
inline complex lattice_reduce(complex z, PeriodPair pp) {
  const double nr = detail::cell_index(z.real(), pp.half_real);
  const double ni = detail::cell_index(z.imag(), pp.half_imag_mag);
  return {z.real() - 2 * pp.half_real * nr, z.imag() - 2 * pp.half_imag_mag * ni};
}

/// Distance from z to the nearest point congruent to `point` modulo the
/// lattice.
inline double lattice_distance(complex z, complex point, PeriodPair pp) {
  return std::abs(lattice_reduce(z - point, pp));
}

struct WpValue {
  complex value;
  complex derivative;
};

/// p(.; g2, g3) with its lattice data cached.
class Weierstrass {
 public:
  static constexpr int kLaurentTerms = 40;
  static constexpr double kPoleThreshold = 1e-12;

  explicit Weierstrass(Invariants inv) : inv_(inv), e_(sig4::midpoints(inv)), periods_(half_periods(inv)) {
    // c_k for k = 2 .. kLaurentTerms + 1, stored at index k - 2.
    coeff_[0] = inv.g2 / 20;
    coeff_[1] = inv.g3 / 28;
    for (int k = 4; k < kLaurentTerms + 2; ++k) {
      double s = 0;
      for (int m = 2; m <= k - 2; ++m) s += coeff_[m - 2] * coeff_[k - m - 2];
      coeff_[k - 2] = 3 * s / ((2 * k + 1) * (k - 3));
    }
  }

  const Invariants& invariants() const { return inv_; }
  const MidpointTriple& midpoints() const { return e_; }
  const PeriodPair& periods() const { return periods_; }

  /// p and p' at z, or nullopt when z is within kPoleThreshold of a lattice
  /// point.
  std::optional<WpValue> try_evaluate(complex z) const {
    const complex reduced = lattice_reduce(z, periods_);
    if (std::abs(reduced) < kPoleThreshold) return std::nullopt;

    // Nearest point c of the half-lattice {0, +-w, +-w', +-w +- w'}.
    const double w = periods_.half_real;
    const double wi = periods_.half_imag_mag;
    const double cr = w * std::round(reduced.real() / w);
    const double ci = wi * std::round(reduced.imag() / wi);
    const complex u = reduced - complex(cr, ci);
    if (cr == 0 && ci == 0) return near_origin(u);

    // p(u + c) = e + (e - e')(e - e'') / (p(u) - e) with e = p(c).
    double e, f;
    if (cr != 0 && ci != 0) {
      e = e_.e2, f = (e_.e2 - e_.e1) * (e_.e2 - e_.e3);
    } else if (cr != 0) {
      e = e_.e1, f = (e_.e1 - e_.e2) * (e_.e1 - e_.e3);
    } else {
      e = e_.e3, f = (e_.e3 - e_.e1) * (e_.e3 - e_.e2);
    }
    if (std::abs(u) < 1e-100) return WpValue{e, 0.0};
    const WpValue inner = near_origin(u);
    const complex gap = inner.value - e;
    return WpValue{e + f / gap, -f * inner.derivative / (gap * gap)};
  }

  WpValue evaluate(complex z) const {
    if (auto v = try_evaluate(z)) return *v;
    throw pole_error("wp: argument is a lattice point");
  }

  complex value(complex z) const { return evaluate(z).value; }
  complex derivative(complex z) const { return evaluate(z).derivative; }

  /// The point z on the perimeter 0 -> w -> w + w' -> w' -> 0 of the
  /// half-period rectangle where p(z) = target. p is real and strictly
  /// decreasing along that path, so every real target has exactly one such
  /// point; the other solution in the cell is -z.
  complex real_preimage(double target) const {
    const double w = periods_.half_real;
    const double wi = periods_.half_imag_mag;
    // Targets equal to a midpoint value can land a few ulps outside the
    // edge's range; they resolve to the nearer endpoint.
    auto solve_edge = [&](auto point, double lo, double hi) {
      auto gap = [&](double s) { return value(point(s)).real() - target; };
      const double glo = gap(lo), ghi = gap(hi);
      if (std::signbit(glo) == std::signbit(ghi) && glo != 0 && ghi != 0) {
        return point(std::abs(glo) < std::abs(ghi) ? lo : hi);
      }
      return point(find_root(gap, Interval{lo, hi}, 0.0));
    };
    if (target >= e_.e1) {
      if (target == e_.e1) return {w, 0};
      double lo = w / 2;
      for (int i = 0; i < 60 && value(complex(lo, 0)).real() < target; ++i) lo /= 2;
      return solve_edge([](double t) { return complex(t, 0); }, lo, w);
    }
    if (target >= e_.e2) {
      return solve_edge([w](double t) { return complex(w, t); }, 0, wi);
    }
    if (target >= e_.e3) {
      return solve_edge([wi](double t) { return complex(t, wi); }, 0, w);
    }
    double lo = wi / 2;
    for (int i = 0; i < 60 && value(complex(0, lo)).real() > target; ++i) lo /= 2;
    return solve_edge([](double t) { return complex(0, t); }, lo, wi);
  }

 private:
  // Laurent expansion at the origin for |u| <= 1.2 min_half (at most 0.6 of
  // the radius of convergence); larger arguments are halved first and
  // doubled back with the duplication formula.
  WpValue near_origin(complex u) const {
    const double limit = 1.2 * periods_.min_half();
    int halvings = 0;
    while (std::abs(u) > limit) {
      u /= 2;
      ++halvings;
    }

    const complex u2 = u * u;
    complex series = 0;
    complex dseries = 0;
    for (int k = kLaurentTerms + 1; k >= 2; --k) {
      series = series * u2 + coeff_[k - 2];
      dseries = dseries * u2 + (2.0 * k - 2) * coeff_[k - 2];
    }
    complex p = 1.0 / u2 + series * u2;
    complex dp = -2.0 / (u2 * u) + dseries * u;

    for (int i = 0; i < halvings; ++i) {
      const complex second = 6.0 * p * p - inv_.g2 / 2;
      const complex q = second / (2.0 * dp);
      const complex p2 = -2.0 * p + q * q;
      const complex dp2 = -dp + second * (12.0 * p * dp * dp - second * second) / (4.0 * dp * dp * dp);
      p = p2;
      dp = dp2;
    }
    return {p, dp};
  }

  Invariants inv_;
  MidpointTriple e_;
  PeriodPair periods_;
  std::array<double, kLaurentTerms> coeff_{};
};

inline complex wp(complex z, Invariants inv) { return Weierstrass(inv).value(z); }
inline complex wp_prime(complex z, Invariants inv) { return Weierstrass(inv).derivative(z); }

}  // namespace sig4

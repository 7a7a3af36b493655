#pragma once

// Cross-function identities between dd and y4, and a batch engine that
// evaluates every identity of the theory as a sampled residual.
//
// Sampling uses a 64-bit linear congruential generator
//   x <- 6364136223846793005 x + 1442695040888963407  (mod 2^64)
// with a double in [0, 1) formed from the top 53 bits. Check number i
// (0-based, registry order) is seeded with seed ^ ((i + 1) * 0x9E3779B97F4A7C15),
// so every check draws the same points however the checks are scheduled.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sig4/dd.hpp"
#include "sig4/errors.hpp"
#include "sig4/hypergeom.hpp"
#include "sig4/numeric_core.hpp"
#include "sig4/quartic_ivp.hpp"
#include "sig4/weierstrass.hpp"
#include "sig4/y4.hpp"

namespace sig4 {

using Lcg64 = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL,
                                              1442695040888963407ULL, 0ULL>;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform point of the centred cell [-w, w] x [-w', w'].
  complex in_cell(const PeriodPair& pp) {
    const double re = uniform(-pp.half_real, pp.half_real);
    const double im = uniform(-pp.half_imag_mag, pp.half_imag_mag);
    return {re, im};
  }

 private:
  Lcg64 engine_;
};

template <class G, class T>
auto central_difference(G&& g, T z, double h = 1e-6) {
  return (g(z + h) - g(z - h)) / (2 * h);
}

/// Fourth-order five-point stencil along the real direction.
template <class G, class T>
auto five_point_derivative(G&& g, T z, double h = 1e-4) {
  return (g(z - 2 * h) - 8.0 * g(z - h) + 8.0 * g(z + h) - g(z + 2 * h)) / (12 * h);
}

/// All contexts needed to relate dd at modulus kappa to y4.
struct Relations {
  DDContext dd;      ///< modulus kappa
  Y4Context y4;      ///< parameter lambda = sqrt(1 - kappa^2)
  Y4Context y4_kappa;///< parameter kappa

  const Modulus& mod() const { return dd.mod; }
};

inline Relations make_relations(double kappa) {
  auto stage = [](const char* name, auto build) {
    try {
      return build();
    } catch (const std::exception& e) {
      throw domain_error(std::string("stage '") + name + "': " + e.what());
    }
  };
  auto dd_ctx = stage("dd context", [&] { return make_context(kappa); });
  auto y4_ctx = stage("y4 context", [&] { return make_y4_context(dd_ctx.mod.lambda()); });
  auto kappa_ctx = stage("kappa-parameterized y4 context", [&] { return make_y4_context(kappa); });
  return {std::move(dd_ctx), std::move(y4_ctx), std::move(kappa_ctx)};
}

/// |P(z) + 4 p(2iz)|.
inline double check_wp_scaling(complex z, const Relations& r) {
  const complex lhs = r.y4.P.value(z);
  const complex rhs = -4.0 * r.dd.p.value(complex(0, 2) * z);
  return std::abs(lhs - rhs);
}

inline double check_wp_scaling(complex z, double kappa) { return check_wp_scaling(z, make_relations(kappa)); }

/// |dd(2iz) - (1 + kappa (y4+(z) - mu+) / (y4+(z) + mu+))|.
inline double check_dd_y4(complex z, const Relations& r) {
  const complex y = y4_plus(z, r.y4);
  const double mu = r.y4.mu_plus;
  if (std::abs(y + mu) < 1e-12) throw pole_error("check_dd_y4: y4+ = -mu+");
  const complex rhs = 1.0 + r.mod().kappa() * (y - mu) / (y + mu);
  return std::abs(dd(complex(0, 2) * z, r.dd) - rhs);
}

inline double check_dd_y4(complex z, double kappa) { return check_dd_y4(z, make_relations(kappa)); }

/// (|omega - 2|Omega'||, ||omega'| - 2 Omega|).
inline std::pair<double, double> check_half_period_exchange(const Relations& r) {
  const auto& w = r.dd.periods();
  const auto& W = r.y4.periods();
  return {std::abs(w.half_real - 2 * W.half_imag_mag), std::abs(w.half_imag_mag - 2 * W.half_real)};
}

inline std::pair<double, double> check_half_period_exchange(double kappa) { return check_half_period_exchange(make_relations(kappa)); }

/// z -> 1 - 2 y4+(z / sqrt8 + Omega/2 + Omega')^2 with the kappa-parameterized
/// y4+; this is dd.
inline complex dd_from_y4_square(complex z, const Relations& r) {
  const complex y = y4_plus(z / (2 * std::numbers::sqrt2) + y4_zeros_poles(r.y4_kappa).zero, r.y4_kappa);
  return 1.0 - 2.0 * y * y;
}

inline double check_dd_y4_square(complex z, const Relations& r) {
  return std::abs(dd(z, r.dd) - dd_from_y4_square(z, r));
}

inline double check_dd_y4_square(complex z, double kappa) {
  return check_dd_y4_square(z, make_relations(kappa));
}

/// A quartic with a real root planted at `root`; all four (or three) roots
/// are real and separated, so the invariants have positive discriminant.
struct PlantedQuartic {
  QuarticCoefficients q;
  double root;
};

inline PlantedQuartic random_planted_quartic(Sampler& s) {
  const int degree = s.uniform() < 0.25 ? 3 : 4;
  std::array<double, 4> roots{};
  for (bool separated = false; !separated;) {
    for (int i = 0; i < degree; ++i) roots[i] = s.uniform(-2, 2);
    separated = true;
    for (int i = 0; i < degree; ++i)
      for (int j = 0; j < i; ++j)
        if (std::abs(roots[i] - roots[j]) < 0.25) separated = false;
  }
  const double lead = s.uniform(0.5, 2) * (s.uniform() < 0.5 ? -1 : 1);
  // Monomial coefficients, highest degree first.
  std::vector<double> c{lead};
  for (int i = 0; i < degree; ++i) {
    c.push_back(0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] -= roots[i] * c[k - 1];
  }
  if (degree == 3) c.insert(c.begin(), 0.0);
  return {QuarticCoefficients::from_monomial(c[0], c[1], c[2], c[3], c[4]), roots[0]};
}

struct IdentityCheck {
  std::string name;
  std::size_t samples = 0;
  double max_residual = 0;
  double tolerance = 0;
  bool passed = false;
};

struct VerificationReport {
  double kappa = 0;
  std::uint64_t seed = 0;
  double tol = 0;
  std::vector<IdentityCheck> checks;
  std::chrono::duration<double, std::milli> wall_time{};

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }
};

namespace detail {

struct Accumulator {
  std::size_t samples = 0;
  double max = 0;

  void add(double r) {
    ++samples;
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    max = std::max(max, r);
  }
};

inline bool clear_of(complex z, std::initializer_list<complex> points, const PeriodPair& pp,
                     double margin) {
  return std::all_of(points.begin(), points.end(),
                     [&](complex p) { return lattice_distance(z, p, pp) >= margin; });
}

inline double pole_margin(const PeriodPair& pp) { return 0.05 * pp.min_half(); }

// Draws until n residuals are collected; draws returning nullopt and
// evaluations hitting a pole are rejected.
template <class Draw, class Eval>
void collect(Accumulator& acc, std::size_t n, Draw&& draw, Eval&& eval) {
  const std::size_t limit = 100 * n + 100;
  for (std::size_t attempts = 0; acc.samples < n && attempts < limit; ++attempts) {
    const std::optional<complex> z = draw();
    if (!z) continue;
    try {
      acc.add(eval(*z));
    } catch (const pole_error&) {
    }
  }
}

using CheckFn = Accumulator (*)(const Relations&, Sampler&, std::size_t);

inline double dd_rhs_scaled(complex d, complex dprime, double lambda) {
  const complex rhs = 2.0 * (1.0 - d) * (d * d - lambda * lambda);
  return std::abs(dprime * dprime - rhs) / (1 + std::pow(std::abs(d), 3));
}

inline Accumulator omega_three_ways_check(const Relations& r, Sampler&, std::size_t) {
  const auto e = omega_three_ways(r.mod());
  Accumulator acc;
  acc.add(std::max({std::abs(e.closed - e.via_integral), std::abs(e.closed - e.via_trig),
                    std::abs(e.via_integral - e.via_trig)}));
  return acc;
}

inline Accumulator omega_trig_eval_check(const Relations& r, Sampler&, std::size_t) {
  const double k = r.mod().kappa();
  const double closed = std::numbers::pi / (2 * std::numbers::sqrt2) * complete_F(k * k);
  Accumulator acc;
  acc.add(std::abs(modular_angle_integral(r.mod().alpha()) - closed));
  return acc;
}

inline Accumulator omega_prime_integral_check(const Relations& r, Sampler&, std::size_t) {
  const double l = r.mod().lambda();
  const double integral = omega_prime(r.mod());
  Accumulator acc;
  acc.add(std::abs(integral - std::numbers::pi / std::numbers::sqrt2 * complete_F(l * l)));
  acc.add(std::abs(integral - r.dd.periods().half_imag_mag));
  return acc;
}

inline Accumulator discriminant_check(const Relations& r, Sampler&, std::size_t) {
  const double k2 = r.mod().kappa() * r.mod().kappa();
  const double l2 = r.mod().lambda() * r.mod().lambda();
  Accumulator acc;
  acc.add(std::abs(r.dd.invariants().discriminant() - k2 * k2 * l2));
  return acc;
}

inline Accumulator dd_real_ode_check(const Relations& r, Sampler& s, std::size_t n) {
  const double w = r.dd.periods().half_real;
  const double l = r.mod().lambda();
  Accumulator acc;
  auto d = [&](double u) { return d_real(u, r.mod()); };
  for (std::size_t i = 0; i < n; ++i) {
    const double u = s.uniform(-2 * w, 2 * w);
    const double value = d(u);
    const double slope = five_point_derivative(d, u);
    acc.add(std::abs(slope * slope - 2 * (1 - value) * (value * value - l * l)));
  }
  return acc;
}

inline Accumulator dd_real_axis_check(const Relations& r, Sampler& s, std::size_t n) {
  const double w = r.dd.periods().half_real;
  Accumulator acc;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = s.uniform(-2 * w, 2 * w);
    acc.add(std::abs(dd(u, r.dd) - d_real(u, r.mod())));
  }
  return acc;
}

inline Accumulator dd_weierstrass_form_check(const Relations& r, Sampler& s, std::size_t n) {
  const auto& pp = r.dd.periods();
  const double k = r.mod().kappa();
  Accumulator acc;
  collect(
      acc, n,
      [&]() -> std::optional<complex> {
        const complex z = s.in_cell(pp);
        if (!clear_of(z, {r.dd.omega_prime()}, pp, pole_margin(pp))) return std::nullopt;
        return z;
      },
      [&](complex z) {
        const complex p = r.dd.p.value(z);
        return std::abs((1.0 - dd(z, r.dd)) * (1.0 / 3 + p) - k * k / 2);
      });
  return acc;
}

inline Accumulator dd_complex_ode_check(const Relations& r, Sampler& s, std::size_t n) {
  const auto& pp = r.dd.periods();
  Accumulator acc;
  auto f = [&](complex z) { return dd(z, r.dd); };
  collect(
      acc, n,
      [&]() -> std::optional<complex> {
        const complex z = s.in_cell(pp);
        if (!clear_of(z, {r.dd.omega_prime()}, pp, pole_margin(pp))) return std::nullopt;
        return z;
      },
      [&](complex z) { return dd_rhs_scaled(f(z), five_point_derivative(f, z), r.mod().lambda()); });
  return acc;
}

inline Accumulator midpoint_values_check(const Relations& r, Sampler&, std::size_t) {
  const double l = r.mod().lambda();
  const complex w = r.dd.omega(), wp = r.dd.omega_prime();
  const complex W = r.y4.Omega(), Wp = r.y4.Omega_prime();
  Accumulator acc;
  acc.add(std::abs(r.dd.p.value(w) - (1.0 / 6 + l / 2)));
  acc.add(std::abs(r.dd.p.value(w + wp) - (1.0 / 6 - l / 2)));
  acc.add(std::abs(r.dd.p.value(wp) + 1.0 / 3));
  acc.add(std::abs(r.y4.P.value(W) - 4.0 / 3));
  acc.add(std::abs(r.y4.P.value(W + Wp) - (-2.0 / 3 + 2 * l)));
  acc.add(std::abs(r.y4.P.value(Wp) - (-2.0 / 3 - 2 * l)));
  acc.add(std::abs(dd(w, r.dd) - l));
  acc.add(std::abs(dd(w + wp, r.dd) + l));
  return acc;
}

inline Accumulator y4_ode_check(const Relations& r, Sampler& s, std::size_t n) {
  const auto& ctx = r.y4;
  const auto& pp = ctx.periods();
  const complex pole = y4_zeros_poles(ctx).pole;
  auto f = [&](complex z) { return y4_plus(z, ctx); };
  Accumulator acc;
  collect(
      acc, n,
      [&]() -> std::optional<complex> {
        const complex z = s.in_cell(pp);
        if (!clear_of(z, {pole, -pole}, pp, pole_margin(pp))) return std::nullopt;
        return z;
      },
      [&](complex z) {
        const complex y = f(z);
        const complex slope = five_point_derivative(f, z);
        return std::abs(slope * slope - ctx.rhs(y)) / (1 + std::pow(std::abs(y), 4));
      });
  return acc;
}

inline Accumulator y4_special_values_check(const Relations& r, Sampler&, std::size_t) {
  const auto& ctx = r.y4;
  const complex W = ctx.Omega(), Wp = ctx.Omega_prime();
  const double shift = 1 - 2 * ctx.parameter * ctx.parameter;
  Accumulator acc;
  acc.add(std::abs(y4_plus(0.0, ctx) - ctx.mu_plus));
  acc.add(std::abs(y4_plus(W, ctx) + ctx.mu_plus));
  acc.add(std::abs(y4_plus(Wp, ctx) - ctx.mu_minus));
  acc.add(std::abs(y4_plus(W + Wp, ctx) + ctx.mu_minus));
  acc.add(std::abs(y4_minus(0.0, ctx) - ctx.mu_minus));
  acc.add(std::abs(chebyshev_T4(ctx.mu_plus) - shift));
  acc.add(std::abs(chebyshev_T4(ctx.mu_minus) - shift));
  return acc;
}

inline Accumulator y4_shifts_check(const Relations& r, Sampler& s, std::size_t n) {
  const auto& ctx = r.y4;
  const auto& pp = ctx.periods();
  const complex W = ctx.Omega(), Wp = ctx.Omega_prime();
  const complex half = W / 2.0;
  Accumulator acc;
  collect(
      acc, n,
      [&]() -> std::optional<complex> {
        const complex z = s.in_cell(pp);
        if (!clear_of(z, {half, -half, half + Wp, -half + Wp}, pp, pole_margin(pp))) return std::nullopt;
        return z;
      },
      [&](complex z) {
        const complex y = y4_plus(z, ctx);
        const complex ym = y4_minus(z, ctx);
        return std::max({std::abs(y4_plus(z + W, ctx) + y), std::abs(y4_plus(z + Wp, ctx) - ym),
                         std::abs(y4_plus(z + W + Wp, ctx) + ym)});
      });
  return acc;
}

inline Accumulator y4_zero_pole_check(const Relations& r, Sampler&, std::size_t) {
  const auto& ctx = r.y4;
  const auto zp = y4_zeros_poles(ctx);
  const double k = ctx.kappa;
  const auto [at_half, at_half_plus_imag] = wp_quarter_values(ctx.invariants());
  Accumulator acc;
  acc.add(std::abs(y4_plus(zp.zero, ctx)));
  acc.add(std::abs(at_half - (4.0 / 3 + 2 * k)));
  acc.add(std::abs(at_half_plus_imag - (4.0 / 3 - 2 * k)));
  acc.add(std::abs(ctx.P.value(zp.pole) - at_half));
  acc.add(std::abs(ctx.P.value(zp.zero) - at_half_plus_imag));
  // Simple zero: slope there is +-sqrt(2) lambda.
  const complex slope = five_point_derivative([&](complex z) { return y4_plus(z, ctx); }, zp.zero);
  acc.add(std::abs(slope * slope - ctx.rhs(complex(0))));
  // Simple pole: 1/y4+ vanishes linearly with slope P'(Omega/2) / (4 kappa mu+).
  const complex growth = ctx.P.derivative(zp.pole) / (4 * k * ctx.mu_plus);
  for (const complex dir : {complex(1, 0), complex(0, 1), complex(-1, 1) / std::numbers::sqrt2}) {
    const complex delta = 1e-6 * dir;
    acc.add(std::abs(1.0 / y4_plus(zp.pole + delta, ctx) - growth * delta));
  }
  return acc;
}

inline Accumulator y0_solution_check(const Relations& r, Sampler& s, std::size_t n) {
  const auto& ctx = r.y4;
  const auto& pp = ctx.periods();
  const complex W = ctx.Omega(), Wp = ctx.Omega_prime();
  auto f = [&](complex z) { return y4_zero_ivp_solution(z, ctx); };
  Accumulator acc;
  acc.add(std::abs(f(0.0)));
  collect(
      acc, n,
      [&]() -> std::optional<complex> {
        const complex z = s.in_cell(pp);
        if (!clear_of(z, {Wp, W + Wp}, pp, pole_margin(pp))) return std::nullopt;
        return z;
      },
      [&](complex z) {
        const complex y = f(z);
        const complex slope = five_point_derivative(f, z);
        return std::abs(slope * slope - ctx.rhs(y)) / (1 + std::pow(std::abs(y), 4));
      });
  return acc;
}

inline Accumulator homogeneity_check(const Relations& r, Sampler& s, std::size_t n) {
  const auto& pp = r.y4.periods();
  const auto& g = r.dd.invariants();
  const auto& G = r.y4.invariants();
  Accumulator acc;
  acc.add(std::abs(16 * g.g2 - G.g2));
  acc.add(std::abs(-64 * g.g3 - G.g3));
  collect(
      acc, n,
      [&]() -> std::optional<complex> {
        const complex z = s.in_cell(pp);
        if (!clear_of(z, {0.0}, pp, pole_margin(pp))) return std::nullopt;
        return z;
      },
      [&](complex z) { return check_wp_scaling(z, r); });
  return acc;
}

inline Accumulator dd_y4_relation_check(const Relations& r, Sampler& s, std::size_t n) {
  const auto& pp = r.y4.periods();
  const complex half = r.y4.Omega() / 2.0;
  Accumulator acc;
  collect(
      acc, n,
      [&]() -> std::optional<complex> {
        const complex z = s.in_cell(pp);
        if (!clear_of(z, {half, -half, r.y4.Omega()}, pp, pole_margin(pp))) return std::nullopt;
        return z;
      },
      [&](complex z) { return check_dd_y4(z, r); });
  return acc;
}

inline Accumulator half_period_exchange_check(const Relations& r, Sampler&, std::size_t) {
  const auto [a, b] = check_half_period_exchange(r);
  Accumulator acc;
  acc.add(a);
  acc.add(b);
  return acc;
}

inline Accumulator period_ratio_check(const Relations& r, Sampler&, std::size_t) {
  const auto& w = r.dd.periods();
  const auto& W = r.y4.periods();
  const double k2 = r.mod().kappa() * r.mod().kappa();
  const double l2 = r.mod().lambda() * r.mod().lambda();
  const complex dd_ratio(0, w.half_imag_mag / w.half_real);
  const complex y4_ratio(0, W.half_imag_mag / W.half_real);
  const complex y4_formula(0, complete_F(k2) / (std::numbers::sqrt2 * complete_F(l2)));
  Accumulator acc;
  acc.add(std::abs(dd_ratio - period_ratio(r.mod())));
  acc.add(std::abs(y4_ratio - y4_formula));
  acc.add(std::abs(dd_ratio * y4_ratio + 1.0));
  return acc;
}

inline Accumulator quartic_ivp_dd_check(const Relations& r, Sampler& s, std::size_t n) {
  const auto sol = solve_quartic_ivp(dd_cubic(r.mod().lambda()), 1.0);
  const auto& pp = r.dd.periods();
  Accumulator acc;
  acc.add(std::abs(sol.invariants().g2 - r.dd.invariants().g2));
  acc.add(std::abs(sol.invariants().g3 - r.dd.invariants().g3));
  collect(
      acc, n,
      [&]() -> std::optional<complex> {
        const complex z = s.in_cell(pp);
        if (!clear_of(z, {r.dd.omega_prime()}, pp, pole_margin(pp))) return std::nullopt;
        return z;
      },
      [&](complex z) { return std::abs(sol(z) - dd(z, r.dd)); });
  return acc;
}

inline Accumulator quartic_ivp_y4_check(const Relations& r, Sampler& s, std::size_t n) {
  const auto& ctx = r.y4;
  const auto sol = solve_quartic_ivp(y4_quartic(ctx.parameter), ctx.mu_plus);
  const auto& pp = ctx.periods();
  const complex half = ctx.Omega() / 2.0;
  Accumulator acc;
  acc.add(std::abs(sol.invariants().g2 - ctx.invariants().g2));
  acc.add(std::abs(sol.invariants().g3 - ctx.invariants().g3));
  collect(
      acc, n,
      [&]() -> std::optional<complex> {
        const complex z = s.in_cell(pp);
        if (!clear_of(z, {half, -half}, pp, pole_margin(pp))) return std::nullopt;
        return z;
      },
      [&](complex z) { return std::abs(sol(z) - y4_plus(z, ctx)); });
  return acc;
}

/// Residuals of one planted quartic: the two reduction-chain identities
/// (relative to the size of the invariant's terms) and the differential
/// equation at one cell point clear of the solution's poles.
inline double planted_quartic_residual(const PlantedQuartic& pq, Sampler& s,
                                       double derivative_step = 1e-4, bool five_point = true) {
  const auto& q = pq.q;
  const TaylorShift t = taylor_shift(q, pq.root);
  const double scale2 = std::abs(q.a0 * q.a4) + 4 * std::abs(q.a1 * q.a3) + 3 * q.a2 * q.a2;
  const double scale3 = std::abs(q.a0 * q.a2 * q.a4) + 2 * std::abs(q.a1 * q.a2 * q.a3) +
                        std::pow(std::abs(q.a2), 3) + std::abs(q.a0) * q.a3 * q.a3 +
                        q.a1 * q.a1 * std::abs(q.a4);
  double worst = std::max(std::abs(t.quadrinvariant() - quadrinvariant(q)) / scale2,
                          std::abs(t.cubinvariant() - cubinvariant(q)) / scale3);

  const auto sol = solve_quartic_ivp(q, pq.root);
  const auto& pp = sol.periods();
  const complex pole = sol.weierstrass().real_preimage(t.A2 / 2);
  auto f = [&](complex z) { return sol(z); };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const complex z = s.in_cell(pp);
    if (!detail::clear_of(z, {pole, -pole}, pp, detail::pole_margin(pp))) continue;
    const complex w = f(z);
    const complex slope = five_point ? five_point_derivative(f, z, derivative_step)
                                     : central_difference(f, z, derivative_step);
    const double ode = std::abs(slope * slope - q(w)) / (1 + std::pow(std::abs(w), 4));
    return std::max(worst, std::isnan(ode) ? std::numeric_limits<double>::infinity() : ode);
  }
  return std::numeric_limits<double>::infinity();
}

inline Accumulator quartic_ivp_random_check(const Relations&, Sampler& s, std::size_t n) {
  Accumulator acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(planted_quartic_residual(random_planted_quartic(s), s));
  return acc;
}

inline Accumulator dd_from_y4_square_check(const Relations& r, Sampler& s, std::size_t n) {
  const auto& pp = r.dd.periods();
  const auto& rp = r.y4_kappa.periods();
  const complex offset = y4_zeros_poles(r.y4_kappa).zero;
  const complex half = r.y4_kappa.Omega() / 2.0;
  constexpr double kScale = 2 * std::numbers::sqrt2;
  Accumulator acc;
  collect(
      acc, n,
      [&]() -> std::optional<complex> {
        const complex z = s.in_cell(pp);
        if (!clear_of(z, {r.dd.omega_prime()}, pp, pole_margin(pp))) return std::nullopt;
        if (!clear_of(z / kScale + offset, {half, -half}, rp, pole_margin(rp))) return std::nullopt;
        return z;
      },
      [&](complex z) { return check_dd_y4_square(z, r); });
  return acc;
}

struct RegistryEntry {
  std::string_view name;
  CheckFn run;
};

inline constexpr std::array<RegistryEntry, 22> kRegistry{{
    {"omega_three_ways", omega_three_ways_check},
    {"omega_trig_eval", omega_trig_eval_check},
    {"omega_prime_integral", omega_prime_integral_check},
    {"discriminant_identity", discriminant_check},
    {"dd_real_ode", dd_real_ode_check},
    {"dd_real_axis_extension", dd_real_axis_check},
    {"dd_weierstrass_form", dd_weierstrass_form_check},
    {"dd_complex_ode", dd_complex_ode_check},
    {"midpoint_values", midpoint_values_check},
    {"y4_ode", y4_ode_check},
    {"y4_special_values", y4_special_values_check},
    {"y4_half_period_shifts", y4_shifts_check},
    {"y4_zero_pole", y4_zero_pole_check},
    {"y4_zero_start_solution", y0_solution_check},
    {"wp_homogeneity", homogeneity_check},
    {"dd_y4_relation", dd_y4_relation_check},
    {"half_period_exchange", half_period_exchange_check},
    {"period_ratios", period_ratio_check},
    {"quartic_ivp_dd", quartic_ivp_dd_check},
    {"quartic_ivp_y4", quartic_ivp_y4_check},
    {"quartic_ivp_random", quartic_ivp_random_check},
    {"dd_from_y4_square", dd_from_y4_square_check},
}};

inline std::uint64_t check_seed(std::uint64_t seed, std::size_t index) {
  return seed ^ ((index + 1) * 0x9E3779B97F4A7C15ULL);
}

}  // namespace detail

/// Names of the registered identity checks, in report order.
inline std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& e : detail::kRegistry) names.emplace_back(e.name);
  return names;
}

/// Evaluates every registered identity at modulus kappa with n samples per
/// sampled check. Checks run concurrently; the report lists them in
/// registry order.
inline VerificationReport run_suite(double kappa, std::size_t n, std::uint64_t seed, double tol) {
  if (n == 0) throw std::invalid_argument("run_suite: sample count must be at least 1");
  if (!(tol >= 0)) throw std::invalid_argument("run_suite: tolerance must be non-negative");
  const auto start = std::chrono::steady_clock::now();
  const Relations rel = make_relations(kappa);

  std::vector<std::future<detail::Accumulator>> pending;
  for (std::size_t i = 0; i < detail::kRegistry.size(); ++i) {
    pending.push_back(std::async(std::launch::async, [&rel, n, seed, i] {
      Sampler sampler(detail::check_seed(seed, i));
      return detail::kRegistry[i].run(rel, sampler, n);
    }));
  }

  VerificationReport report;
  report.kappa = kappa;
  report.seed = seed;
  report.tol = tol;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    IdentityCheck check;
    check.name = std::string(detail::kRegistry[i].name);
    check.tolerance = tol;
    try {
      const auto acc = pending[i].get();
      check.samples = acc.samples;
      check.max_residual = acc.samples ? acc.max : std::numeric_limits<double>::infinity();
    } catch (const std::exception&) {
      check.max_residual = std::numeric_limits<double>::infinity();
    }
    check.passed = check.max_residual <= tol;
    report.checks.push_back(std::move(check));
  }
  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

}  // namespace sig4

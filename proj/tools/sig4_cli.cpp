// sig4: command-line front end for the signature-four elliptic functions.
//
//   sig4 eval <dd|y4plus|y4minus|wp|phi|d> [--kappa K | --lambda L | --g2 A --g3 B] --z "a+bi"
//   sig4 periods --kappa K [--csv]
//   sig4 invariants --kappa K [--csv]
//   sig4 table <function> [parameters] --from Z0 --to Z1 --steps N
//   sig4 verify --kappa K [--n N] [--seed S] [--tol T] [--out FILE]
//
// Exit codes: 0 success, 1 numerical or verification failure, 2 usage error.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sig4/complex_io.hpp"
#include "sig4/dd.hpp"
#include "sig4/errors.hpp"
#include "sig4/report_json.hpp"
#include "sig4/verify.hpp"
#include "sig4/weierstrass.hpp"
#include "sig4/y4.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

constexpr double kDefaultVerifyTol = 1e-8;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Parameters {
  std::optional<double> kappa;
  std::optional<double> lambda;
  std::optional<double> g2;
  std::optional<double> g3;
  bool kappa_parameterized = false;
};

void add_parameter_options(CLI::App* cmd, Parameters& p) {
  cmd->add_option("--kappa", p.kappa, "modulus kappa in (0, 1)");
  cmd->add_option("--lambda", p.lambda, "y4 equation parameter lambda in (0, 1)");
  cmd->add_option("--g2", p.g2, "Weierstrass invariant g2 (wp only)");
  cmd->add_option("--g3", p.g3, "Weierstrass invariant g3 (wp only)");
  cmd->add_flag("--kappa-parameterized", p.kappa_parameterized,
                "y4 only: use kappa itself as the equation parameter");
}

double unit_interval(std::optional<double> v, const char* name) {
  if (!v) throw usage_error(std::string("--") + name + " is required");
  if (!(*v > 0 && *v < 1)) throw usage_error(std::string("--") + name + " must lie in (0, 1)");
  return *v;
}

sig4::complex parse_point(const std::string& text, const char* flag) {
  const auto z = sig4::parse_complex(text);
  if (!z) throw usage_error(std::string(flag) + ": cannot parse complex number '" + text + "'");
  return *z;
}

double real_point(sig4::complex z, const char* function) {
  if (z.imag() != 0) throw usage_error(std::string(function) + " takes a real argument");
  return z.real();
}

double y4_parameter(const Parameters& p) {
  if (p.lambda && p.kappa) throw usage_error("give either --lambda or --kappa, not both");
  if (p.lambda) return unit_interval(p.lambda, "lambda");
  const double k = unit_interval(p.kappa, "kappa");
  return p.kappa_parameterized ? k : std::sqrt((1 - k) * (1 + k));
}

// Evaluator for one named function; every evaluation returns a complex value
// (the real-line functions with zero imaginary part).
struct Evaluator {
  std::function<sig4::complex(sig4::complex)> fn;
  bool real_valued = false;
};

Evaluator make_evaluator(const std::string& function, const Parameters& p) {
  using namespace sig4;
  if (function == "dd") {
    auto ctx = std::make_shared<DDContext>(make_context(unit_interval(p.kappa, "kappa")));
    return {[ctx](complex z) { return dd(z, *ctx); }};
  }
  if (function == "y4plus" || function == "y4minus") {
    auto ctx = std::make_shared<Y4Context>(make_y4_context(y4_parameter(p)));
    if (function == "y4plus") return {[ctx](complex z) { return y4_plus(z, *ctx); }};
    return {[ctx](complex z) { return y4_minus(z, *ctx); }};
  }
  if (function == "wp") {
    if (!p.g2 || !p.g3) throw usage_error("wp needs --g2 and --g3");
    const Invariants inv{*p.g2, *p.g3};
    if (!(inv.discriminant() > 0)) throw usage_error("wp needs g2^3 - 27 g3^2 > 0");
    auto w = std::make_shared<Weierstrass>(inv);
    return {[w](complex z) { return w->value(z); }};
  }
  if (function == "phi" || function == "d") {
    const Modulus mod = Modulus::from_kappa(unit_interval(p.kappa, "kappa"));
    if (function == "phi") {
      return {[mod](complex z) { return complex(phi(real_point(z, "phi"), mod), 0); }, true};
    }
    return {[mod](complex z) { return complex(d_real(real_point(z, "d"), mod), 0); }, true};
  }
  throw usage_error("unknown function '" + function + "'");
}

const std::vector<std::string> kFunctions{"dd", "y4plus", "y4minus", "wp", "phi", "d"};

int run_eval(const std::string& function, const Parameters& p, const std::string& z_text) {
  const Evaluator ev = make_evaluator(function, p);
  const sig4::complex z = parse_point(z_text, "--z");
  try {
    const sig4::complex v = ev.fn(z);
    // Real results (imaginary part exactly zero) print as plain reals.
    const bool real = ev.real_valued || v.imag() == 0;
    std::cout << (real ? sig4::format_real(v.real()) : sig4::format_complex(v)) << '\n';
  } catch (const sig4::pole_error&) {
    std::cout << "pole\n";
  }
  return kExitOk;
}

int run_periods(const Parameters& p, bool csv) {
  const auto rel = sig4::make_relations(unit_interval(p.kappa, "kappa"));
  const auto& w = rel.dd.periods();
  const auto& W = rel.y4.periods();
  const double ratio_dd = w.half_imag_mag / w.half_real;
  const double ratio_y4 = W.half_imag_mag / W.half_real;
  const std::vector<std::pair<std::string, double>> rows{
      {"omega", w.half_real},        {"omega_prime_imag", w.half_imag_mag},
      {"Omega", W.half_real},        {"Omega_prime_imag", W.half_imag_mag},
      {"ratio_dd_imag", ratio_dd},   {"ratio_y4_imag", ratio_y4}};
  if (csv) {
    for (std::size_t i = 0; i < rows.size(); ++i) std::cout << (i ? "," : "") << rows[i].first;
    std::cout << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) std::cout << (i ? "," : "") << sig4::format_real(rows[i].second);
    std::cout << '\n';
  } else {
    for (const auto& [name, value] : rows) std::cout << name << " = " << sig4::format_real(value) << '\n';
  }
  return kExitOk;
}

int run_invariants(const Parameters& p, bool csv) {
  const auto rel = sig4::make_relations(unit_interval(p.kappa, "kappa"));
  const auto& g = rel.dd.invariants();
  const auto& e = rel.dd.p.midpoints();
  const auto& G = rel.y4.invariants();
  const auto& E = rel.y4.P.midpoints();
  const std::vector<std::pair<std::string, double>> rows{
      {"g2", g.g2}, {"g3", g.g3}, {"discriminant", g.discriminant()},
      {"e1", e.e1}, {"e2", e.e2}, {"e3", e.e3},
      {"G2", G.g2}, {"G3", G.g3}, {"Discriminant", G.discriminant()},
      {"E1", E.e1}, {"E2", E.e2}, {"E3", E.e3}};
  if (csv) {
    for (std::size_t i = 0; i < rows.size(); ++i) std::cout << (i ? "," : "") << rows[i].first;
    std::cout << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) std::cout << (i ? "," : "") << sig4::format_real(rows[i].second);
    std::cout << '\n';
  } else {
    for (const auto& [name, value] : rows) std::cout << name << " = " << sig4::format_real(value) << '\n';
  }
  return kExitOk;
}

int run_table(const std::string& function, const Parameters& p, const std::string& from_text,
              const std::string& to_text, int steps) {
  if (steps < 1) throw usage_error("--steps must be at least 1");
  const Evaluator ev = make_evaluator(function, p);
  const sig4::complex from = parse_point(from_text, "--from");
  const sig4::complex to = parse_point(to_text, "--to");
  std::cout << "re(z),im(z),re(f),im(f)\n";
  for (int i = 0; i <= steps; ++i) {
    const sig4::complex z = from + (to - from) * (static_cast<double>(i) / steps);
    std::cout << sig4::csv_field(sig4::format_real(z.real())) << ','
              << sig4::csv_field(sig4::format_real(z.imag())) << ',';
    try {
      const sig4::complex v = ev.fn(z);
      std::cout << sig4::csv_field(sig4::format_real(v.real())) << ','
                << sig4::csv_field(sig4::format_real(v.imag())) << '\n';
    } catch (const sig4::pole_error&) {
      std::cout << "pole,pole\n";
    }
  }
  return kExitOk;
}

double default_tolerance() {
  if (const char* env = std::getenv("SIG4_TOL")) {
    const auto v = sig4::detail::parse_double(env);
    if (!v || !(*v >= 0)) throw usage_error("SIG4_TOL must be a non-negative number");
    return *v;
  }
  return kDefaultVerifyTol;
}

int run_verify(const Parameters& p, long long n, std::uint64_t seed, std::optional<double> tol,
               const std::string& out) {
  const double kappa = unit_interval(p.kappa, "kappa");
  if (n < 1) throw usage_error("--n must be at least 1");
  const double tolerance = tol ? *tol : default_tolerance();
  if (!(tolerance >= 0)) throw usage_error("--tol must be non-negative");

  const auto report = sig4::run_suite(kappa, static_cast<std::size_t>(n), seed, tolerance);
  const std::string text = sig4::to_json(report).dump(2);
  if (out.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream file(out);
    if (!file) throw std::runtime_error("cannot write " + out);
    file << text << '\n';
  }
  for (const auto& c : report.checks) {
    if (!c.passed) std::cerr << "FAILED " << c.name << " max_residual=" << c.max_residual << '\n';
  }
  return report.all_passed() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signature-four elliptic functions: evaluation, periods, tables and identity verification"};
  app.require_subcommand(1);

  Parameters params;
  std::string function;
  std::string z_text;
  bool csv = false;
  std::string from_text, to_text;
  int steps = 100;
  long long n = 200;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string out;

  auto* eval = app.add_subcommand("eval", "evaluate a function at one point");
  eval->add_option("function", function, "dd | y4plus | y4minus | wp | phi | d")
      ->required()
      ->check(CLI::IsMember(kFunctions));
  add_parameter_options(eval, params);
  eval->add_option("--z", z_text, "argument as a+bi")->required();

  auto* periods = app.add_subcommand("periods", "half-periods of dd and y4 and their ratios");
  periods->add_option("--kappa", params.kappa, "modulus kappa in (0, 1)")->required();
  periods->add_flag("--csv", csv, "one CSV row with header");

  auto* invariants = app.add_subcommand("invariants", "Weierstrass invariants and midpoint values");
  invariants->add_option("--kappa", params.kappa, "modulus kappa in (0, 1)")->required();
  invariants->add_flag("--csv", csv, "one CSV row with header");

  auto* table = app.add_subcommand("table", "CSV table of a function along a segment");
  table->add_option("function", function, "dd | y4plus | y4minus | wp | phi | d")
      ->required()
      ->check(CLI::IsMember(kFunctions));
  add_parameter_options(table, params);
  table->add_option("--from", from_text, "segment start (a+bi)")->required();
  table->add_option("--to", to_text, "segment end (a+bi)")->required();
  table->add_option("--steps", steps, "number of steps; steps + 1 rows")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the identity verification suite");
  verify->add_option("--kappa", params.kappa, "modulus kappa in (0, 1)")->required();
  verify->add_option("--n", n, "samples per sampled identity")->capture_default_str();
  verify->add_option("--seed", seed, "PRNG seed")->capture_default_str();
  verify->add_option("--tol", tol, "pass tolerance (default: SIG4_TOL or 1e-8)");
  verify->add_option("--out", out, "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return run_eval(function, params, z_text);
    if (*periods) return run_periods(params, csv);
    if (*invariants) return run_invariants(params, csv);
    if (*table) return run_table(function, params, from_text, to_text, steps);
    if (*verify) return run_verify(params, n, seed, tol, out);
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sig4::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

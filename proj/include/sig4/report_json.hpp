#pragma once

// JSON form of a VerificationReport:
// {kappa, seed, tol, checks: [{name, samples, max_residual, passed}], wall_time_ms}

#include <cmath>

#include "json.hpp"
#include "sig4/verify.hpp"

namespace sig4 {

inline nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json entry;
    entry["name"] = c.name;
    entry["samples"] = c.samples;
    // JSON has no infinity; a failed evaluation is reported as null.
    if (std::isfinite(c.max_residual)) entry["max_residual"] = c.max_residual;
    else entry["max_residual"] = nullptr;
    entry["passed"] = c.passed;
    checks.push_back(std::move(entry));
  }
  return {{"kappa", report.kappa},
          {"seed", report.seed},
          {"tol", report.tol},
          {"checks", std::move(checks)},
          {"wall_time_ms", report.wall_time.count()}};
}

}  // namespace sig4

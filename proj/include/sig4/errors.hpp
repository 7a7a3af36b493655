#pragma once

#include <stdexcept>
#include <string>

namespace sig4 {

/// Argument outside the supported domain (modulus not in (0,1), no sign
/// change in a bracket, non-positive discriminant, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation point lies on (or within the pole threshold of) a pole.
class pole_error : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// An iterative scheme (quadrature, root finder, series) failed to reach
/// its tolerance.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sig4

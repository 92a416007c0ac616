#pragma once

#include <cmath>
#include <stdexcept>

namespace h2r {

/// 1/sqrt(5): the limiting angle function of every graphical end.
inline const double kInvSqrt5 = 1.0 / std::sqrt(5.0);

/// Numerical tolerances shared across modules. Every threshold used by the
/// library lives here so reports can echo the full set.
struct Tolerances {
  double model_roundtrip = 1e-12;  // hyperboloid <-> disk conversions
  double soliton_residual = 1e-8;  // |H - nu| and its weighted/conformal forms
  double laplacian_residual = 1e-8;
  double sign_law_guard = 1e-8;    // |y'| below this skips the kappa1 sign check
  double boundary_tag = 1e-12;     // OnGamma / OnAxisY0 tagging distance
  double max_hyperbolic_radius = 700.0;  // sinh/cosh overflow guard
  double max_builder_radius = 30.0;
  double asymptotic_window_min = 8.0;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace h2r

namespace h2r {

/// A documented precondition of an operation was violated by its input.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace h2r

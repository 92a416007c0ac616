#pragma once

// Behaviour of rotational graphs at infinity. With phi = f' the graph
// equation becomes the scalar problem phi' = (1 + phi^2)(2 - phi coth r), and
// psi = phi - 2 tanh r measures the approach to the linear asymptote f ~ 2r + k.

#include <functional>
#include <vector>

#include "h2r/dop853.hpp"
#include "h2r/profile_ode.hpp"

namespace h2r {

/// Right-hand side (1 + phi^2)(2 - phi coth r).
double phi_rhs(double r, double phi);
/// Right-hand side of the psi equation: -psi (1 + (2 tanh r + psi)^2) / tanh r - 2 / cosh^2 r.
double psi_rhs(double r, double psi);

class PhiSolution {
 public:
  PhiSolution(double R, double phi0, std::vector<DenseSegment<1>> segments);

  double R() const { return R_; }
  double phi0() const { return phi0_; }
  double r_end() const { return segments_.back().t_new; }

  double phi(double r) const;
  /// Derivative of the dense interpolant.
  double dphi(double r) const;
  double psi(double r) const;
  /// Accepted step ends, starting at R.
  std::vector<double> nodes() const;

 private:
  const DenseSegment<1>& segment_for(double r) const;

  double R_, phi0_;
  std::vector<DenseSegment<1>> segments_;
};

inline IntegratorConfig phi_default_config() { return {1e-12, 1e-12, 0.05, 1e-12, 1e-3}; }

/// Solves phi(R) = phi0 on [R, r_end]. Throws std::domain_error on violated
/// preconditions and IntegrationFailure on blow-up.
PhiSolution solve_phi(double R, double phi0, double r_end, const IntegratorConfig& cfg = phi_default_config());

/// Lower bound for -psi valid wherever psi' > 0: 2 tanh r / (cosh^2 r (1 + 4 tanh^2 r)).
double psi_lower_bound(double r);
/// Upper bound for -psi once psi > -eps0 and -psi' > -eps0.
double psi_upper_bound(double r, double eps0);

/// Closed-form rotational graph f = 2 log cosh r + (1/4) log(cosh^2 r / (5 cosh 2r - 3)).
double model_f(double r);
double model_phi(double r);
/// -4 tanh r / (5 cosh 2r - 3).
double model_psi(double r);
/// The bounded term log(cosh^2 r / (5 cosh 2r - 3)), decreasing to -log 10.
double model_log_term(double r);
/// lim (model_f(r) - 2r) = -2 log 2 - (1/4) log 10.
double model_offset_limit();

struct AsymptoticOffset {
  double k = 0.0;          // mean of f(r) - 2r over the window
  double variation = 0.0;  // max - min of f(r) - 2r over the window
  double a = 0.0, b = 0.0;
  bool unresolved = false;  // window starts below the resolved-asymptotics radius
};

AsymptoticOffset asymptotic_offset(const std::function<double(double)>& f, double a, double b, int n = 401);

/// Smallest grid radius r* in [a, b] such that `holds` is true at every grid
/// point >= r*; NaN when it fails at b.
double measured_threshold(const std::function<bool(double)>& holds, double a, double b, int n = 4001);

struct AsymptoticRow {
  double r, phi, psi, lower, upper, model_psi;
};

/// Table of phi, psi and both bounds on n points of [R, r_end].
std::vector<AsymptoticRow> asymptotic_table(const PhiSolution& sol, double eps0, int n);

}  // namespace h2r

#pragma once

// The canonical rotational solitons: the bowl (entire graph through the axis),
// the translating catenoids (two graphical wings joined through a neck and a
// turning circle), and the trivial vertical planes.

#include <array>
#include <memory>
#include <vector>

#include "h2r/config.hpp"
#include "h2r/hyperbolic_models.hpp"
#include "h2r/profile_ode.hpp"

namespace h2r {

/// View of a stretch of profile on which r is strictly monotone in t, as a
/// graph w = f(r). Throws ContractViolation if the stretch is not graphical.
class GraphView {
 public:
  GraphView(const SolitonProfile& profile, double t_lo, double t_hi);
  explicit GraphView(const SolitonProfile& profile);

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }

  /// Arc length where the curve reaches radius r.
  double t_of(double r) const;
  double f(double r) const;
  double slope(double r) const;  // f'(r) = tan(theta)
  double angle(double r) const;  // y = cos(theta)
  ProfileState state(double r) const;
  /// f''(r) = theta'(t) / cos^3(theta) with theta' from the dense interpolant.
  double second_derivative(double r) const;

 private:
  const SolitonProfile* profile_;
  double t_lo_, t_hi_;
  double r_min_, r_max_;
  bool increasing_;
  std::vector<double> t_, r_;
};

class BowlSoliton {
 public:
  BowlSoliton(SolitonProfile profile, IntegratorConfig cfg, double r_max);

  const SolitonProfile& profile() const { return *profile_; }
  const IntegratorConfig& config() const { return cfg_; }
  double r_max() const { return r_max_; }

  /// Graph data for 0 <= r <= r_max; the axis series covers r < r_min_axis.
  double f(double r) const;
  double slope(double r) const;
  double angle(double r) const;
  /// f''(r) from the dense interpolant's derivative of theta.
  double second_derivative(double r) const;

 private:
  std::shared_ptr<const SolitonProfile> profile_;  // shared so the graph view stays valid on copy
  IntegratorConfig cfg_;
  double r_max_;
  GraphView graph_;
};

/// Integrates from the axis series start out to r_max (<= 30). The vertex sits at height 0.
BowlSoliton build_bowl(double r_max, const IntegratorConfig& cfg = {});

struct Catenoid {
  double neck_radius = 0.0;
  double turning_radius = 0.0;
  Event turning;             // horizontal tangency on the lower wing
  std::vector<Event> gamma;  // Gamma crossings of the upper wing
  SolitonProfile upper;      // t >= 0, from the neck outwards
  SolitonProfile lower;      // t <= 0, neck -> turning circle -> outwards

  /// Both wings as one curve, ordered by arc length.
  SolitonProfile full() const;
};

/// Neck at (r0, w = 0) with vertical tangent w' = 1. Throws std::domain_error for r0 <= 0.
Catenoid build_catenoid(double r0, double r_max, const IntegratorConfig& cfg = {});

/// Vertical plane gamma x R over the geodesic of H^2 through `through` with
/// unit direction at angle `direction` (measured in the disk chart).
class VerticalPlane {
 public:
  VerticalPlane(const PoincarePoint& through, double direction);

  /// Point at geodesic arc length s and height z.
  HyperboloidPoint point(double s, double z) const;
  /// Unit normal (horizontal) at (s, z) in Minkowski coordinates.
  HyperboloidTangent normal(double s, double z) const;

  double nu(double, double) const { return 0.0; }
  double mean_curvature(double, double) const { return 0.0; }
  double residual(double s, double z) const { return mean_curvature(s, z) - nu(s, z); }

 private:
  std::array<double, 3> p_{};  // base point on the hyperboloid
  std::array<double, 3> v_{};  // unit tangent of the geodesic
  std::array<double, 3> n_{};  // unit normal of the geodesic within H^2
};

VerticalPlane vertical_plane(const PoincarePoint& through, double direction);

/// tau(sigma) = f_bowl(sigma) - f_bowl(0), for 0 <= sigma <= 30.
double tau(double sigma, const BowlSoliton& bowl);
double tau(double sigma, const IntegratorConfig& cfg = {});

/// Radial solution of the graph equation over the disk of radius R with
/// constant boundary value c: the bowl shifted to u(R) = c.
class RadialDirichlet {
 public:
  RadialDirichlet(double R, double c, const BowlSoliton& bowl);

  double R() const { return R_; }
  double c() const { return c_; }
  double shift() const { return shift_; }

  double u(double r) const;
  double du(double r) const;
  /// u'' from the dense interpolant's angle derivative.
  double ddu(double r) const;
  /// u'' - (1 + u'^2)(2 - u' coth r), the radial graph equation.
  double pde_residual(double r) const;

 private:
  double R_, c_, shift_;
  BowlSoliton bowl_;
};

/// Throws std::domain_error for R <= 0 or R beyond the bowl's reach.
RadialDirichlet solve_rotational_dirichlet(double R, double c, const BowlSoliton& bowl);

struct C1Distance {
  double c0 = 0.0;     // sup |g + shift - f_bowl|
  double c1 = 0.0;     // sup |g' - f_bowl'|
  double shift = 0.0;  // least-squares vertical shift applied to g
};

/// C0/C1 deviation of a graph from the bowl on [a, b] after the least-squares
/// vertical shift, sampled at n points. Throws ContractViolation when the
/// profile is not a graph over the window.
C1Distance c1_distance_to_bowl(const GraphView& graph, const BowlSoliton& bowl, double a, double b, int n = 2001);
C1Distance c1_distance_to_bowl(const SolitonProfile& profile, const BowlSoliton& bowl, double a, double b,
                               int n = 2001);

}  // namespace h2r

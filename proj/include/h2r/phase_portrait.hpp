#pragma once

// Phase space of the first-order system: the curve Gamma_eps where y' = 0,
// the monotonicity regions it cuts out together with the axis y = 0, and the
// field F(r, y) itself.

#include <array>
#include <string>
#include <vector>

#include "h2r/profile_ode.hpp"

namespace h2r {

enum class Region {
  Lambda1Minus,
  Lambda1Plus,
  Theta1Minus,
  ThetaMinus1Plus,
  LambdaMinus1Minus,
  LambdaMinus1Plus,
  OnGamma,
  OnAxisY0,
};

const char* to_string(Region r);

/// Gamma_eps(y) = artanh(sqrt(1 - y^2) / (2 eps y)). Throws std::domain_error
/// unless eps*y > 0 and 1/sqrt5 < |y| <= 1.
double gamma(double y, int eps);

/// The branch of Gamma_eps as a graph over r: y = eps / sqrt(1 + 4 tanh^2 r).
double gamma_inverse(double r, int eps);

/// Region of an interior sample. Points within `tol` of Gamma_eps (in r) or of
/// y = 0 get the boundary tags.
Region classify(const OrbitSample& o, double tol);
Region classify(const OrbitSample& o);

/// Image of a region under (y, eps) -> (-y, -eps).
Region mirror(Region r);

enum class Monotonicity { Increasing, Decreasing, Extremum, OrthogonalCrossing };

const char* to_string(Monotonicity m);

/// Behaviour of the orbit through o seen as a graph y(r). Where Gamma_eps does
/// not exist on the sample's side the curve counts as r = +infinity.
Monotonicity predict_monotonicity(const OrbitSample& o, double tol);
Monotonicity predict_monotonicity(const OrbitSample& o);

struct PhaseGrid {
  double r_min = 0.05;
  double r_max = 10.0;
  double y_min = -0.999;
  double y_max = 0.999;
  int nr = 500;
  int ny = 500;

  void validate() const;
  double r_at(int i) const;
  double y_at(int j) const;
};

struct EquilibriumScan {
  double min_norm = 0.0;
  double r = 0.0;
  double y = 0.0;
  int eps = 1;
};

/// Minimum of |F| over the grid nodes (endpoints included).
EquilibriumScan equilibrium_scan(const PhaseGrid& grid, int eps);

struct FieldSample {
  double r = 0.0;
  double y = 0.0;
  double dir_r = 0.0;  // F / |F|
  double dir_y = 0.0;
  Region region = Region::OnAxisY0;
};

struct PhasePortrait {
  int eps = 1;
  PhaseGrid grid;
  std::vector<FieldSample> field;
  std::vector<std::array<double, 2>> gamma_polyline;  // (r, y) vertices
  std::array<double, 2> asymptotes{};                 // y = -1/sqrt5, +1/sqrt5
};

PhasePortrait portrait(int eps, const PhaseGrid& grid, int gamma_vertices = 200);

}  // namespace h2r

#pragma once

// The product space H^2 x R in two charts: the upper sheet of the hyperboloid
// in Lorentz-Minkowski space, and the Poincare disk with conformal factor
// lambda = 2 / (1 - |u|^2). The model isometry is the stereographic
// projection from (0, 0, -1).

#include <array>
#include <stdexcept>
#include <variant>

namespace h2r {

struct HyperboloidPoint {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 1.0;
  double z = 0.0;
};

struct PoincarePoint {
  double u1 = 0.0;
  double u2 = 0.0;
  double z = 0.0;
};

using AmbientPoint = std::variant<HyperboloidPoint, PoincarePoint>;

/// Tangent vector in disk coordinates (du1, du2, dz) at its base point.
struct PoincareTangent {
  PoincarePoint base;
  double du1 = 0.0;
  double du2 = 0.0;
  double dz = 0.0;
};

/// Tangent vector in Minkowski coordinates (dx1, dx2, dx3, dz).
struct HyperboloidTangent {
  HyperboloidPoint base;
  double dx1 = 0.0;
  double dx2 = 0.0;
  double dx3 = 0.0;
  double dz = 0.0;
};

class ModelDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

PoincarePoint to_poincare(const HyperboloidPoint& p);
HyperboloidPoint to_hyperboloid(const PoincarePoint& q);
HyperboloidPoint to_hyperboloid(const AmbientPoint& p);
PoincarePoint to_poincare(const AmbientPoint& p);

/// lambda = 2 / (1 - u1^2 - u2^2); throws ModelDomainError on or outside the boundary.
double conformal_factor(const PoincarePoint& q);

/// Hyperbolic distance from (u1, u2) to the disk center.
double dist_to_origin(const PoincarePoint& q);
double dist_to_origin(const HyperboloidPoint& p);

/// Point at hyperbolic distance r from the axis in direction `angle`, at height z.
/// Throws ModelDomainError when r exceeds the overflow guard.
HyperboloidPoint hyperboloid_from_polar(double r, double angle, double z);
PoincarePoint poincare_from_polar(double r, double angle, double z);

/// x1^2 + x2^2 - x3^2 (equals -1 on the hyperboloid).
double minkowski_norm2(const HyperboloidPoint& p);
double minkowski_inner(const HyperboloidTangent& a, const HyperboloidTangent& b);

/// lambda^2 (du1 dv1 + du2 dv2) + dz dz.
double poincare_inner(const PoincareTangent& a, const PoincareTangent& b);

/// Differential of to_hyperboloid applied to a disk tangent vector.
HyperboloidTangent push_forward(const PoincareTangent& v);

/// Orthonormal frame E1 = d/du1 / lambda, E2 = d/du2 / lambda, E3 = d/dz.
std::array<PoincareTangent, 3> orthonormal_frame(const PoincarePoint& q);

}  // namespace h2r

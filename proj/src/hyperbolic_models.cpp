#include "h2r/hyperbolic_models.hpp"

#include <cmath>
#include <string>

#include "h2r/config.hpp"

namespace h2r {

PoincarePoint to_poincare(const HyperboloidPoint& p) {
  const double d = 1.0 + p.x3;
  return {p.x1 / d, p.x2 / d, p.z};
}

HyperboloidPoint to_hyperboloid(const PoincarePoint& q) {
  const double s = q.u1 * q.u1 + q.u2 * q.u2;
  if (!(s < 1.0)) throw ModelDomainError("to_hyperboloid: point not inside the unit disk");
  const double d = 1.0 - s;
  return {2.0 * q.u1 / d, 2.0 * q.u2 / d, (1.0 + s) / d, q.z};
}

HyperboloidPoint to_hyperboloid(const AmbientPoint& p) {
  if (const auto* h = std::get_if<HyperboloidPoint>(&p)) return *h;
  return to_hyperboloid(std::get<PoincarePoint>(p));
}

PoincarePoint to_poincare(const AmbientPoint& p) {
  if (const auto* q = std::get_if<PoincarePoint>(&p)) return *q;
  return to_poincare(std::get<HyperboloidPoint>(p));
}

double conformal_factor(const PoincarePoint& q) {
  const double s = q.u1 * q.u1 + q.u2 * q.u2;
  if (!(s < 1.0)) throw ModelDomainError("conformal_factor: boundary or exterior point");
  return 2.0 / (1.0 - s);
}

double dist_to_origin(const PoincarePoint& q) {
  const double rho = std::hypot(q.u1, q.u2);
  if (!(rho < 1.0)) throw ModelDomainError("dist_to_origin: point not inside the unit disk");
  return 2.0 * std::atanh(rho);
}

double dist_to_origin(const HyperboloidPoint& p) {
  // asinh of the horizontal radius is accurate near the origin, unlike acosh(x3).
  return std::asinh(std::hypot(p.x1, p.x2));
}

HyperboloidPoint hyperboloid_from_polar(double r, double angle, double z) {
  if (!(r >= 0.0)) throw ModelDomainError("hyperboloid_from_polar: negative radius");
  if (r > default_tolerances().max_hyperbolic_radius) {
    throw ModelDomainError("hyperboloid_from_polar: r=" + std::to_string(r) + " overflows sinh/cosh");
  }
  const double s = std::sinh(r);
  return {s * std::cos(angle), s * std::sin(angle), std::cosh(r), z};
}

PoincarePoint poincare_from_polar(double r, double angle, double z) {
  if (!(r >= 0.0)) throw ModelDomainError("poincare_from_polar: negative radius");
  const double rho = std::tanh(0.5 * r);
  return {rho * std::cos(angle), rho * std::sin(angle), z};
}

double minkowski_norm2(const HyperboloidPoint& p) {
  return p.x1 * p.x1 + p.x2 * p.x2 - p.x3 * p.x3;
}

double minkowski_inner(const HyperboloidTangent& a, const HyperboloidTangent& b) {
  return a.dx1 * b.dx1 + a.dx2 * b.dx2 - a.dx3 * b.dx3 + a.dz * b.dz;
}

double poincare_inner(const PoincareTangent& a, const PoincareTangent& b) {
  const double lambda = conformal_factor(a.base);
  return lambda * lambda * (a.du1 * b.du1 + a.du2 * b.du2) + a.dz * b.dz;
}

HyperboloidTangent push_forward(const PoincareTangent& v) {
  const PoincarePoint& q = v.base;
  const double s = q.u1 * q.u1 + q.u2 * q.u2;
  const double d = 1.0 - s;
  if (!(d > 0.0)) throw ModelDomainError("push_forward: base point not inside the unit disk");
  const double ds = 2.0 * (q.u1 * v.du1 + q.u2 * v.du2);
  // x_i = 2u_i/d, x3 = (1+s)/d with dd = -ds.
  HyperboloidTangent out;
  out.base = to_hyperboloid(q);
  out.dx1 = 2.0 * v.du1 / d + 2.0 * q.u1 * ds / (d * d);
  out.dx2 = 2.0 * v.du2 / d + 2.0 * q.u2 * ds / (d * d);
  out.dx3 = ds / d + (1.0 + s) * ds / (d * d);
  out.dz = v.dz;
  return out;
}

std::array<PoincareTangent, 3> orthonormal_frame(const PoincarePoint& q) {
  const double inv = 1.0 / conformal_factor(q);
  return {PoincareTangent{q, inv, 0.0, 0.0}, PoincareTangent{q, 0.0, inv, 0.0},
          PoincareTangent{q, 0.0, 0.0, 1.0}};
}

}  // namespace h2r

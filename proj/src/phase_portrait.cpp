#include "h2r/phase_portrait.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "h2r/config.hpp"

namespace h2r {

const char* to_string(Region r) {
  switch (r) {
    case Region::Lambda1Minus: return "Lambda1Minus";
    case Region::Lambda1Plus: return "Lambda1Plus";
    case Region::Theta1Minus: return "Theta1Minus";
    case Region::ThetaMinus1Plus: return "ThetaMinus1Plus";
    case Region::LambdaMinus1Minus: return "LambdaMinus1Minus";
    case Region::LambdaMinus1Plus: return "LambdaMinus1Plus";
    case Region::OnGamma: return "OnGamma";
    case Region::OnAxisY0: return "OnAxisY0";
  }
  return "Unknown";
}

const char* to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::Increasing: return "increasing";
    case Monotonicity::Decreasing: return "decreasing";
    case Monotonicity::Extremum: return "extremum";
    case Monotonicity::OrthogonalCrossing: return "orthogonal_crossing";
  }
  return "unknown";
}

double gamma(double y, int eps) {
  const double ey = (eps >= 0 ? 1.0 : -1.0) * y;
  if (!(ey > 0.0)) throw std::domain_error("gamma: requires eps*y > 0");
  if (!(ey > kInvSqrt5)) throw std::domain_error("gamma: |y| <= 1/sqrt5 lies beyond the asymptote");
  if (ey > 1.0) throw std::domain_error("gamma: |y| > 1");
  // (1-y)(1+y) keeps 1 - y^2 accurate near the axis end y = 1.
  return std::atanh(std::sqrt((1.0 - ey) * (1.0 + ey)) / (2.0 * ey));
}

double gamma_inverse(double r, int eps) {
  if (!(r >= 0.0)) throw std::domain_error("gamma_inverse: r must be nonnegative");
  const double t = std::tanh(r);
  return (eps >= 0 ? 1.0 : -1.0) / std::sqrt(1.0 + 4.0 * t * t);
}

namespace {

// +infinity where Gamma_eps does not exist on the sample's side.
double gamma_or_inf(double y, int eps) {
  const double ey = (eps >= 0 ? 1.0 : -1.0) * y;
  if (ey > kInvSqrt5 && ey <= 1.0) return gamma(y, eps);
  return std::numeric_limits<double>::infinity();
}

}  // namespace

Region classify(const OrbitSample& o, double tol) {
  const int eps = o.eps >= 0 ? 1 : -1;
  if (std::abs(o.y) <= tol) return Region::OnAxisY0;
  const double g = gamma_or_inf(o.y, eps);
  if (std::isfinite(g) && std::abs(o.r - g) <= tol) return Region::OnGamma;
  if (eps * o.y < 0.0) return eps > 0 ? Region::Theta1Minus : Region::ThetaMinus1Plus;
  if (o.r > g) return eps > 0 ? Region::Lambda1Plus : Region::LambdaMinus1Plus;
  return eps > 0 ? Region::Lambda1Minus : Region::LambdaMinus1Minus;
}

Region classify(const OrbitSample& o) { return classify(o, default_tolerances().boundary_tag); }

Region mirror(Region r) {
  switch (r) {
    case Region::Lambda1Minus: return Region::LambdaMinus1Minus;
    case Region::Lambda1Plus: return Region::LambdaMinus1Plus;
    case Region::Theta1Minus: return Region::ThetaMinus1Plus;
    case Region::ThetaMinus1Plus: return Region::Theta1Minus;
    case Region::LambdaMinus1Minus: return Region::Lambda1Minus;
    case Region::LambdaMinus1Plus: return Region::Lambda1Plus;
    default: return r;
  }
}

Monotonicity predict_monotonicity(const OrbitSample& o, double tol) {
  const int eps = o.eps >= 0 ? 1 : -1;
  if (std::abs(o.y) <= tol) return Monotonicity::OrthogonalCrossing;
  const double g = gamma_or_inf(o.y, eps);
  if (std::isfinite(g) && std::abs(o.r - g) <= tol) return Monotonicity::Extremum;
  const bool beyond = o.r > g;
  if (o.y > 0.0) return beyond ? Monotonicity::Decreasing : Monotonicity::Increasing;
  return beyond ? Monotonicity::Increasing : Monotonicity::Decreasing;
}

Monotonicity predict_monotonicity(const OrbitSample& o) {
  return predict_monotonicity(o, default_tolerances().boundary_tag);
}

void PhaseGrid::validate() const {
  if (!(r_min > 0.0 && r_max > r_min)) throw std::invalid_argument("PhaseGrid: need 0 < r_min < r_max");
  if (!(y_min > -1.0 && y_max < 1.0 && y_max > y_min)) {
    throw std::invalid_argument("PhaseGrid: need -1 < y_min < y_max < 1");
  }
  if (nr < 2 || ny < 2) throw std::invalid_argument("PhaseGrid: resolution must be at least 2");
}

double PhaseGrid::r_at(int i) const { return r_min + (r_max - r_min) * i / (nr - 1); }
double PhaseGrid::y_at(int j) const { return y_min + (y_max - y_min) * j / (ny - 1); }

EquilibriumScan equilibrium_scan(const PhaseGrid& grid, int eps) {
  grid.validate();
  EquilibriumScan best{std::numeric_limits<double>::infinity(), 0.0, 0.0, eps >= 0 ? 1 : -1};
  for (int i = 0; i < grid.nr; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      const OrbitSample o{grid.r_at(i), grid.y_at(j), best.eps};
      const auto F = rhs_phase(o);
      const double n = std::hypot(F[0], F[1]);
      if (n < best.min_norm) best = {n, o.r, o.y, best.eps};
    }
  }
  return best;
}

PhasePortrait portrait(int eps, const PhaseGrid& grid, int gamma_vertices) {
  grid.validate();
  if (gamma_vertices < 2) throw std::invalid_argument("portrait: need at least 2 gamma vertices");
  PhasePortrait out;
  out.eps = eps >= 0 ? 1 : -1;
  out.grid = grid;
  out.asymptotes = {-kInvSqrt5, kInvSqrt5};
  out.field.reserve(static_cast<std::size_t>(grid.nr) * grid.ny);
  for (int i = 0; i < grid.nr; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      const OrbitSample o{grid.r_at(i), grid.y_at(j), out.eps};
      const auto F = rhs_phase(o);
      const double n = std::hypot(F[0], F[1]);
      out.field.push_back({o.r, o.y, F[0] / n, F[1] / n, classify(o)});
    }
  }
  // Vertices are placed via the inverse graph and then snapped onto Gamma(y)
  // exactly; near the asymptote r is far more sensitive to y than y to r.
  for (int k = 0; k < gamma_vertices; ++k) {
    const double y = gamma_inverse(grid.r_max * k / (gamma_vertices - 1), out.eps);
    const double ey = out.eps * y;
    if (!(ey > kInvSqrt5)) continue;
    out.gamma_polyline.push_back({gamma(y, out.eps), y});
  }
  return out;
}

}  // namespace h2r

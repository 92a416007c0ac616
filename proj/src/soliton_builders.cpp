#include "h2r/soliton_builders.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <string>

namespace h2r {

// ---------------------------------------------------------------- GraphView

GraphView::GraphView(const SolitonProfile& profile, double t_lo, double t_hi)
    : profile_(&profile), t_lo_(t_lo), t_hi_(t_hi) {
  if (!(t_hi > t_lo)) throw ContractViolation("GraphView: empty arc-length range");
  t_.push_back(t_lo);
  r_.push_back(profile.at(t_lo).r);
  for (const auto& s : profile.samples()) {
    if (s.t > t_lo && s.t < t_hi) {
      t_.push_back(s.t);
      r_.push_back(s.r);
    }
  }
  t_.push_back(t_hi);
  r_.push_back(profile.at(t_hi).r);

  increasing_ = r_.back() > r_.front();
  for (std::size_t i = 1; i < r_.size(); ++i) {
    const bool up = r_[i] > r_[i - 1];
    const bool down = r_[i] < r_[i - 1];
    if ((increasing_ && !up) || (!increasing_ && !down)) {
      throw ContractViolation("GraphView: r is not strictly monotone near t=" + std::to_string(t_[i]));
    }
  }
  r_min_ = std::min(r_.front(), r_.back());
  r_max_ = std::max(r_.front(), r_.back());
}

GraphView::GraphView(const SolitonProfile& profile) : GraphView(profile, profile.t_begin(), profile.t_end()) {}

double GraphView::t_of(double r) const {
  // Endpoint radii come from the interpolant and may sit an ulp inside the event radius.
  const double slack = 1e-12 * std::max(1.0, std::abs(r));
  if (r < r_min_ && r >= r_min_ - slack) r = r_min_;
  if (r > r_max_ && r <= r_max_ + slack) r = r_max_;
  if (!(r >= r_min_ && r <= r_max_)) {
    throw std::out_of_range("GraphView: r=" + std::to_string(r) + " outside [" + std::to_string(r_min_) + ", " +
                            std::to_string(r_max_) + "]");
  }
  // r_ is monotone; locate the bracketing sample interval.
  std::size_t k;
  if (increasing_) {
    k = static_cast<std::size_t>(std::upper_bound(r_.begin(), r_.end(), r) - r_.begin());
  } else {
    k = static_cast<std::size_t>(std::upper_bound(r_.begin(), r_.end(), r, std::greater<>()) - r_.begin());
  }
  k = std::clamp<std::size_t>(k, 1, r_.size() - 1);
  double a = t_[k - 1], b = t_[k];
  auto g = [&](double t) { return profile_->at(t).r - r; };
  double ga = g(a), gb = g(b);
  if (ga == 0.0) return a;
  if (gb == 0.0) return b;
  if ((ga > 0) == (gb > 0)) return std::abs(ga) < std::abs(gb) ? a : b;  // rounding at a sample
  auto tol = [](double x, double y) { return std::abs(x - y) <= 1e-15 * std::max(1.0, std::abs(x)); };
  boost::uintmax_t iters = 100;
  const auto [lo, hi] = boost::math::tools::toms748_solve(g, a, b, ga, gb, tol, iters);
  return std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
}

ProfileState GraphView::state(double r) const { return profile_->at(t_of(r)); }
double GraphView::f(double r) const { return state(r).w; }
double GraphView::slope(double r) const { return std::tan(state(r).theta); }
double GraphView::angle(double r) const { return std::cos(state(r).theta); }

double GraphView::second_derivative(double r) const {
  const double t = t_of(r);
  const double c = std::cos(profile_->at(t).theta);
  return profile_->interpolant_derivative(t).dtheta / (c * c * c);
}

// --------------------------------------------------------------------- bowl

BowlSoliton::BowlSoliton(SolitonProfile profile, IntegratorConfig cfg, double r_max)
    : profile_(std::make_shared<const SolitonProfile>(std::move(profile))),
      cfg_(cfg),
      r_max_(r_max),
      graph_(*profile_) {}

double BowlSoliton::f(double r) const {
  if (r < graph_.r_min()) return axis_series::height(r);
  return graph_.f(r);
}

double BowlSoliton::slope(double r) const {
  if (r < graph_.r_min()) return axis_series::slope(r);
  return graph_.slope(r);
}

double BowlSoliton::angle(double r) const {
  if (r < graph_.r_min()) return 1.0 / std::sqrt(1.0 + std::pow(axis_series::slope(r), 2));
  return graph_.angle(r);
}

double BowlSoliton::second_derivative(double r) const {
  if (r < graph_.r_min()) return 1.0 + r * r / 2.0 - std::pow(r, 4) / 6.0;
  return graph_.second_derivative(r);
}

BowlSoliton build_bowl(double r_max, const IntegratorConfig& cfg) {
  cfg.validate();
  if (!(r_max <= default_tolerances().max_builder_radius)) {
    throw std::domain_error("build_bowl: r_max=" + std::to_string(r_max) + " exceeds the overflow guard");
  }
  if (!(r_max > cfg.r_min_axis)) throw std::domain_error("build_bowl: r_max must exceed r_min_axis");
  IntegrationLimits lim;
  lim.r_max = r_max;
  auto res = integrate(axis_start(cfg), 1, cfg, 1, lim);
  if (res.event.kind != EventKind::RMaxReached) {
    throw IntegrationFailure(std::string("build_bowl: stopped at ") + to_string(res.event.kind), res.event.state);
  }
  res.profile.set_kind(ProfileKind::Bowl);
  return BowlSoliton(std::move(res.profile), cfg, r_max);
}

// ----------------------------------------------------------------- catenoid

SolitonProfile Catenoid::full() const { return lower.joined(upper, ProfileKind::Generic); }

Catenoid build_catenoid(double r0, double r_max, const IntegratorConfig& cfg) {
  cfg.validate();
  if (!(r0 > 0.0)) throw std::domain_error("build_catenoid: neck radius must be positive");
  if (!(r_max > r0)) throw std::domain_error("build_catenoid: r_max must exceed the neck radius");
  if (!(r_max <= default_tolerances().max_builder_radius)) {
    throw std::domain_error("build_catenoid: r_max exceeds the overflow guard");
  }
  const ProfileState neck{0.0, r0, 0.0, std::numbers::pi / 2};

  IntegrationLimits lim;
  lim.r_max = r_max;
  auto up = integrate(neck, 1, cfg, 1, lim);
  if (up.event.kind != EventKind::RMaxReached) {
    throw IntegrationFailure(std::string("build_catenoid: upper wing stopped at ") + to_string(up.event.kind),
                             up.event.state);
  }

  // Backwards from the neck: down to the turning circle, then out again with eps = -1.
  auto down = integrate(neck, 1, cfg, -1, lim);
  if (down.event.kind != EventKind::HorizontalTangency) {
    throw IntegrationFailure(std::string("build_catenoid: no turning circle, stopped at ") +
                                 to_string(down.event.kind),
                             down.event.state);
  }
  auto out = integrate(switch_epsilon(down.event), cfg, -1, lim);
  if (out.event.kind != EventKind::RMaxReached) {
    throw IntegrationFailure(std::string("build_catenoid: lower wing stopped at ") + to_string(out.event.kind),
                             out.event.state);
  }

  Catenoid c;
  c.neck_radius = r0;
  c.turning_radius = down.event.state.r;
  c.turning = down.event;
  c.gamma = up.profile.crossings();
  c.upper = std::move(up.profile);
  c.upper.set_kind(ProfileKind::CatenoidUpper);
  c.lower = out.profile.joined(down.profile, ProfileKind::CatenoidLower);
  return c;
}

// ----------------------------------------------------------- vertical plane

namespace {

using V3 = std::array<double, 3>;

double lorentz(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] - a[2] * b[2]; }

}  // namespace

VerticalPlane::VerticalPlane(const PoincarePoint& through, double direction) {
  const HyperboloidTangent d = push_forward(PoincareTangent{through, std::cos(direction), std::sin(direction), 0.0});
  p_ = {d.base.x1, d.base.x2, d.base.x3};
  v_ = {d.dx1, d.dx2, d.dx3};
  const double nv = std::sqrt(lorentz(v_, v_));
  for (double& x : v_) x /= nv;
  // Lorentzian cross product J (p x v) is orthogonal to p and v.
  n_ = {p_[1] * v_[2] - p_[2] * v_[1], p_[2] * v_[0] - p_[0] * v_[2], -(p_[0] * v_[1] - p_[1] * v_[0])};
  const double nn = std::sqrt(lorentz(n_, n_));
  for (double& x : n_) x /= nn;
}

HyperboloidPoint VerticalPlane::point(double s, double z) const {
  const double c = std::cosh(s), sh = std::sinh(s);
  return {c * p_[0] + sh * v_[0], c * p_[1] + sh * v_[1], c * p_[2] + sh * v_[2], z};
}

HyperboloidTangent VerticalPlane::normal(double s, double z) const {
  return {point(s, z), n_[0], n_[1], n_[2], 0.0};
}

VerticalPlane vertical_plane(const PoincarePoint& through, double direction) {
  return VerticalPlane(through, direction);
}

// ---------------------------------------------------------------------- tau

double tau(double sigma, const BowlSoliton& bowl) {
  if (!(sigma >= 0.0 && sigma <= bowl.r_max())) {
    throw std::domain_error("tau: sigma=" + std::to_string(sigma) + " outside [0, " + std::to_string(bowl.r_max()) +
                            "]");
  }
  return bowl.f(sigma) - bowl.f(0.0);
}

double tau(double sigma, const IntegratorConfig& cfg) {
  if (!(sigma >= 0.0 && sigma <= default_tolerances().max_builder_radius)) {
    throw std::domain_error("tau: sigma must lie in [0, 30]");
  }
  return tau(sigma, build_bowl(std::max(sigma, 1.0), cfg));
}

// ---------------------------------------------------------------- Dirichlet

RadialDirichlet::RadialDirichlet(double R, double c, const BowlSoliton& bowl)
    : R_(R), c_(c), shift_(c - bowl.f(R)), bowl_(bowl) {}

double RadialDirichlet::u(double r) const {
  if (r == R_) return c_;
  return bowl_.f(r) + shift_;
}

double RadialDirichlet::du(double r) const { return bowl_.slope(r); }
double RadialDirichlet::ddu(double r) const { return bowl_.second_derivative(r); }

double RadialDirichlet::pde_residual(double r) const {
  if (!(r > 0.0)) throw std::domain_error("pde_residual: r must be positive");
  const double p = du(r);
  return ddu(r) - (1.0 + p * p) * (2.0 - p / std::tanh(r));
}

RadialDirichlet solve_rotational_dirichlet(double R, double c, const BowlSoliton& bowl) {
  if (!(R > 0.0)) throw std::domain_error("solve_rotational_dirichlet: R must be positive");
  if (!(R <= bowl.r_max())) throw std::domain_error("solve_rotational_dirichlet: R beyond the bowl's reach");
  return RadialDirichlet(R, c, bowl);
}

// ------------------------------------------------------------- C1 distance

C1Distance c1_distance_to_bowl(const GraphView& graph, const BowlSoliton& bowl, double a, double b, int n) {
  if (!(b > a) || n < 2) throw ContractViolation("c1_distance_to_bowl: need a < b and n >= 2");
  if (a < graph.r_min() || b > graph.r_max()) {
    throw ContractViolation("c1_distance_to_bowl: profile is not a graph over the window");
  }
  if (b > bowl.r_max()) throw ContractViolation("c1_distance_to_bowl: window beyond the bowl");
  std::vector<double> dv(n), dslope(n);
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = a + (b - a) * i / (n - 1);
    dv[i] = bowl.f(r) - graph.f(r);
    dslope[i] = graph.slope(r) - bowl.slope(r);
    mean += dv[i];
  }
  C1Distance out;
  out.shift = mean / n;
  for (int i = 0; i < n; ++i) {
    out.c0 = std::max(out.c0, std::abs(dv[i] - out.shift));
    out.c1 = std::max(out.c1, std::abs(dslope[i]));
  }
  return out;
}

C1Distance c1_distance_to_bowl(const SolitonProfile& profile, const BowlSoliton& bowl, double a, double b, int n) {
  // Split the samples into runs of strictly monotone r; use the first run covering the window.
  const auto& s = profile.samples();
  std::size_t start = 0;
  while (start + 1 < s.size()) {
    std::size_t end = start + 1;
    const bool up = s[end].r > s[start].r;
    while (end + 1 < s.size() && ((s[end + 1].r > s[end].r) == up) && s[end + 1].r != s[end].r) ++end;
    const double lo = std::min(s[start].r, s[end].r), hi = std::max(s[start].r, s[end].r);
    if (lo <= a && hi >= b) {
      GraphView g(profile, s[start].t, s[end].t);
      return c1_distance_to_bowl(g, bowl, a, b, n);
    }
    start = end;
  }
  throw ContractViolation("c1_distance_to_bowl: profile is not a graph over the window");
}

}  // namespace h2r

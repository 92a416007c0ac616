#include "h2r/profile_ode.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <optional>
#include <string>

namespace h2r {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double coth(double r) { return 1.0 / std::tanh(r); }

Vec<3> arclength_field(const Vec<3>& y) {
  const double r = y[0];
  if (!(r > 0.0)) return {kNaN, kNaN, kNaN};
  const double c = std::cos(y[2]);
  const double s = std::sin(y[2]);
  return {c, s, 2.0 * c - s * coth(r)};
}

/// Root of g on [t_a, t_b] (either orientation) given opposite signs at the ends.
template <std::size_t N, class G>
double locate_root(const DenseSegment<N>& seg, const G& g, double t_a, double t_b, double g_a,
                   double g_b) {
  if (g_a == 0.0) return t_a;
  if (g_b == 0.0) return t_b;
  double lo = t_a, hi = t_b, g_lo = g_a, g_hi = g_b;
  if (lo > hi) {
    std::swap(lo, hi);
    std::swap(g_lo, g_hi);
  }
  auto f = [&](double t) { return g(seg.eval(t)); };
  auto tol = [](double a, double b) {
    return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(a), std::abs(b)});
  };
  boost::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, g_lo, g_hi, tol, iters);
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

struct EventProbe {
  EventKind kind;
  bool terminal;
  double (*fn)(const Vec<3>&, double);
  double param;
};

double g_horizontal(const Vec<3>& y, double) { return std::sin(y[2]); }
double g_gamma(const Vec<3>& y, double) {
  if (!(y[0] > 0.0)) return kNaN;
  return 2.0 * std::cos(y[2]) - std::sin(y[2]) * coth(y[0]);
}
double g_radius(const Vec<3>& y, double level) { return y[0] - level; }

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

IntegrationResult integrate_impl(const ProfileState& start, int eps, const IntegratorConfig& cfg,
                                 int direction, const IntegrationLimits& limits, bool resume) {
  cfg.validate();
  if (!(start.r > 0.0)) throw AxisSingularity("integrate: start radius must be positive");
  direction = direction >= 0 ? 1 : -1;
  eps = eps >= 0 ? 1 : -1;

  std::vector<ProfileSample> samples{{start.t, start.r, start.w, start.theta, orientation_of(start.theta, eps)}};
  std::vector<DenseSegment<3>> segments;
  std::vector<Event> crossings;

  auto finish = [&](Event ev) {
    if (direction < 0) {
      std::reverse(samples.begin(), samples.end());
      std::reverse(segments.begin(), segments.end());
      std::reverse(crossings.begin(), crossings.end());
    }
    return IntegrationResult{SolitonProfile(ProfileKind::Generic, std::move(samples), std::move(segments),
                                            std::move(crossings)),
                             ev};
  };

  if (!resume && limits.stop_at_horizontal && std::abs(std::sin(start.theta)) <= cfg.event_tol) {
    return finish(Event{EventKind::HorizontalTangency, start.t, start, eps, std::abs(std::sin(start.theta))});
  }

  std::vector<EventProbe> probes;
  probes.push_back({EventKind::HorizontalTangency, limits.stop_at_horizontal, g_horizontal, 0.0});
  probes.push_back({EventKind::GammaCrossing, limits.stop_at_gamma, g_gamma, 0.0});
  if (std::isfinite(limits.r_max)) probes.push_back({EventKind::RMaxReached, true, g_radius, limits.r_max});
  if (limits.r_axis > 0.0) probes.push_back({EventKind::AxisReached, true, g_radius, limits.r_axis});

  typename Dop853<3>::Options opt;
  opt.abs_tol = cfg.abs_tol;
  opt.rel_tol = cfg.rel_tol;
  opt.max_step = cfg.max_step;
  Dop853<3> stepper([](double, const Vec<3>& y) { return arclength_field(y); }, start.t,
                    Vec<3>{start.r, start.w, start.theta}, direction, opt);

  const double t_limit = std::isfinite(limits.t_span) ? start.t + direction * limits.t_span : kNaN;
  int eps_now = eps;
  // On resume the start sits on the horizontal; its sign is taken from the first step's end.
  bool skip_horizontal_once = resume;

  for (long n = 0; n < limits.max_steps; ++n) {
    DenseSegment<3> seg;
    try {
      seg = stepper.step(t_limit);
    } catch (const StepSizeUnderflow& e) {
      const ProfileState last = samples.back().state();
      throw IntegrationFailure(std::string("integrate: ") + e.what(), last);
    }
    segments.push_back(seg);

    struct Hit {
      double t;
      const EventProbe* probe;
    };
    std::vector<Hit> hits;
    for (const auto& p : probes) {
      if (p.kind == EventKind::HorizontalTangency && skip_horizontal_once) continue;
      const double g0 = p.fn(seg.y_old, p.param);
      const double g1 = p.fn(seg.y_new, p.param);
      if (!std::isfinite(g0) || !std::isfinite(g1)) continue;
      // A zero at the step start was reported by the previous step.
      if (g0 == 0.0 || sign_of(g0) == sign_of(g1)) continue;
      auto g = [&p](const Vec<3>& y) { return p.fn(y, p.param); };
      hits.push_back({locate_root(seg, g, seg.t_old, seg.t_new, g0, g1), &p});
    }
    skip_horizontal_once = false;
    std::sort(hits.begin(), hits.end(),
              [direction](const Hit& a, const Hit& b) { return direction * a.t < direction * b.t; });

    for (const auto& hit : hits) {
      const Vec<3> y = seg.eval(hit.t);
      const ProfileState st{hit.t, y[0], y[1], y[2]};
      Event ev{hit.probe->kind, hit.t, st, eps_now, std::abs(hit.probe->fn(y, hit.probe->param))};
      if (hit.probe->terminal) {
        samples.push_back({st.t, st.r, st.w, st.theta, orientation_of(st.theta, eps_now)});
        return finish(ev);
      }
      crossings.push_back(ev);
      if (hit.probe->kind == EventKind::HorizontalTangency) eps_now = -eps_now;
      samples.push_back({st.t, st.r, st.w, st.theta, orientation_of(st.theta, eps_now)});
    }

    const Vec<3>& y = seg.y_new;
    samples.push_back({seg.t_new, y[0], y[1], y[2], orientation_of(y[2], eps_now)});
    if (std::isfinite(t_limit) && seg.t_new == t_limit) {
      return finish(Event{EventKind::TMaxReached, seg.t_new, samples.back().state(), eps_now, 0.0});
    }
  }
  throw IntegrationFailure("integrate: step budget exhausted", samples.back().state());
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(abs_tol > 0.0 && rel_tol > 0.0 && max_step > 0.0 && event_tol > 0.0 && r_min_axis > 0.0)) {
    throw std::invalid_argument("IntegratorConfig: all fields must be positive");
  }
  if (event_tol > abs_tol) throw std::invalid_argument("IntegratorConfig: event_tol must not exceed abs_tol");
}

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::AxisReached: return "AxisReached";
    case EventKind::HorizontalTangency: return "HorizontalTangency";
    case EventKind::GammaCrossing: return "GammaCrossing";
    case EventKind::RMaxReached: return "RMaxReached";
    case EventKind::TMaxReached: return "TMaxReached";
  }
  return "Unknown";
}

const char* to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Bowl: return "bowl";
    case ProfileKind::CatenoidUpper: return "catenoid_upper";
    case ProfileKind::CatenoidLower: return "catenoid_lower";
    case ProfileKind::Generic: return "generic";
  }
  return "unknown";
}

ArcLengthDerivative rhs_arclength(const ProfileState& s) {
  if (!(s.r > 0.0)) throw AxisSingularity("rhs_arclength: r must be positive");
  const double c = std::cos(s.theta);
  const double sn = std::sin(s.theta);
  return {c, sn, 2.0 * c - sn * coth(s.r)};
}

std::array<double, 2> rhs_phase(const OrbitSample& o) {
  if (!(o.r > 0.0)) throw AxisSingularity("rhs_phase: r must be positive");
  if (std::abs(o.y) > 1.0) throw std::domain_error("rhs_phase: |y| must not exceed 1");
  const double q = 1.0 - o.y * o.y;
  return {o.y, q * coth(o.r) - 2.0 * o.eps * o.y * std::sqrt(q)};
}

int orientation_of(double theta, int fallback) {
  const double s = std::sin(theta);
  if (s > 0.0) return 1;
  if (s < 0.0) return -1;
  return fallback >= 0 ? 1 : -1;
}

double ProfileSample::y() const { return std::cos(theta); }

SolitonProfile::SolitonProfile(ProfileKind kind, std::vector<ProfileSample> samples,
                               std::vector<DenseSegment<3>> segments, std::vector<Event> crossings)
    : kind_(kind), samples_(std::move(samples)), segments_(std::move(segments)), crossings_(std::move(crossings)) {
  if (samples_.empty()) throw std::invalid_argument("SolitonProfile: no samples");
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    if (samples_[i].t < samples_[i - 1].t) throw std::invalid_argument("SolitonProfile: samples not ordered by t");
  }
}

double SolitonProfile::t_begin() const { return samples_.front().t; }
double SolitonProfile::t_end() const { return samples_.back().t; }

const DenseSegment<3>& SolitonProfile::segment_for(double t) const {
  if (segments_.empty()) throw std::logic_error("SolitonProfile: no dense output");
  if (t < t_begin() || t > t_end()) {
    throw std::out_of_range("SolitonProfile: t=" + std::to_string(t) + " outside profile");
  }
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double v, const DenseSegment<3>& s) { return v < s.t_min(); });
  if (it != segments_.begin()) --it;
  return *it;
}

ProfileState SolitonProfile::at(double t) const {
  const Vec<3> y = segment_for(t).eval(t);
  return {t, y[0], y[1], y[2]};
}

ArcLengthDerivative SolitonProfile::interpolant_derivative(double t) const {
  const Vec<3> d = segment_for(t).derivative(t);
  return {d[0], d[1], d[2]};
}

SolitonProfile SolitonProfile::joined(const SolitonProfile& next, ProfileKind kind) const {
  const auto& a = samples_.back();
  const auto& b = next.samples_.front();
  if (std::abs(a.t - b.t) > 1e-12 || std::abs(a.r - b.r) > 1e-12 || std::abs(a.w - b.w) > 1e-12) {
    throw std::invalid_argument("SolitonProfile::joined: profiles do not share an endpoint");
  }
  std::vector<ProfileSample> s = samples_;
  s.insert(s.end(), next.samples_.begin() + 1, next.samples_.end());
  std::vector<DenseSegment<3>> seg = segments_;
  seg.insert(seg.end(), next.segments_.begin(), next.segments_.end());
  std::vector<Event> c = crossings_;
  c.insert(c.end(), next.crossings_.begin(), next.crossings_.end());
  return SolitonProfile(kind, std::move(s), std::move(seg), std::move(c));
}

IntegrationResult integrate(const ProfileState& start, int eps, const IntegratorConfig& cfg, int direction,
                            const IntegrationLimits& limits) {
  return integrate_impl(start, eps, cfg, direction, limits, false);
}

IntegrationResult integrate(const Continuation& from, const IntegratorConfig& cfg, int direction,
                            const IntegrationLimits& limits) {
  return integrate_impl(from.state, from.eps, cfg, direction, limits, true);
}

namespace axis_series {
double slope(double r) { return r + r * r * r / 6.0 - std::pow(r, 5) / 30.0; }
double height(double r) { return r * r / 2.0 + std::pow(r, 4) / 24.0 - std::pow(r, 6) / 180.0; }
double arc_length(double r) { return r + r * r * r / 6.0 + std::pow(r, 5) / 120.0; }
}  // namespace axis_series

ProfileState axis_start(const IntegratorConfig& cfg) {
  cfg.validate();
  const double r = cfg.r_min_axis;
  return {axis_series::arc_length(r), r, axis_series::height(r), std::atan(axis_series::slope(r))};
}

Continuation switch_epsilon(const Event& e) {
  if (e.kind != EventKind::HorizontalTangency) {
    throw std::logic_error(std::string("switch_epsilon: expected HorizontalTangency, got ") + to_string(e.kind));
  }
  return {e.state, -e.eps};
}

OrbitSample PhaseOrbit::at(double t) const {
  for (const auto& s : segments) {
    if (s.contains(t)) {
      const Vec<2> y = s.eval(t);
      return {y[0], y[1], eps};
    }
  }
  throw std::out_of_range("PhaseOrbit::at: t outside orbit");
}

PhaseOrbit integrate_phase(const OrbitSample& start, const IntegratorConfig& cfg, int direction,
                           const PhaseLimits& limits) {
  cfg.validate();
  if (!(start.r > 0.0)) throw AxisSingularity("integrate_phase: start radius must be positive");
  if (!(std::abs(start.y) < 1.0 - limits.y_guard)) throw std::domain_error("integrate_phase: start too close to |y| = 1");
  direction = direction >= 0 ? 1 : -1;
  const int eps = start.eps >= 0 ? 1 : -1;

  auto field = [eps](double, const Vec<2>& v) -> Vec<2> {
    if (!(v[0] > 0.0) || std::abs(v[1]) > 1.0) return {kNaN, kNaN};
    const double q = 1.0 - v[1] * v[1];
    return {v[1], q * coth(v[0]) - 2.0 * eps * v[1] * std::sqrt(q)};
  };
  typename Dop853<2>::Options opt;
  opt.abs_tol = cfg.abs_tol;
  opt.rel_tol = cfg.rel_tol;
  opt.max_step = cfg.max_step;
  Dop853<2> stepper(field, 0.0, Vec<2>{start.r, start.y}, direction, opt);

  PhaseOrbit orbit;
  orbit.eps = eps;
  orbit.times.push_back(0.0);
  orbit.samples.push_back({start.r, start.y, eps});
  const double t_limit = direction * limits.t_span;
  const double y_stop = 1.0 - limits.y_guard;

  auto stop_fns = std::array<double (*)(const Vec<2>&, double), 3>{
      [](const Vec<2>& v, double a) { return std::abs(v[1]) - a; },
      [](const Vec<2>& v, double a) { return v[0] - a; },
      [](const Vec<2>& v, double a) { return v[0] - a; }};
  const std::array<double, 3> levels{y_stop, limits.r_min, limits.r_max};

  for (long n = 0; n < 2'000'000; ++n) {
    DenseSegment<2> seg;
    try {
      seg = stepper.step(t_limit);
    } catch (const StepSizeUnderflow& e) {
      throw IntegrationFailure(std::string("integrate_phase: ") + e.what(),
                               ProfileState{orbit.times.back(), orbit.samples.back().r, 0.0, std::acos(orbit.samples.back().y)});
    }
    std::optional<double> stop;
    for (std::size_t k = 0; k < stop_fns.size(); ++k) {
      const double g0 = stop_fns[k](seg.y_old, levels[k]);
      const double g1 = stop_fns[k](seg.y_new, levels[k]);
      if (sign_of(g0) == sign_of(g1) || g0 == 0.0) continue;
      auto g = [&](const Vec<2>& v) { return stop_fns[k](v, levels[k]); };
      const double tr = locate_root(seg, g, seg.t_old, seg.t_new, g0, g1);
      if (!stop || direction * tr < direction * *stop) stop = tr;
    }
    orbit.segments.push_back(seg);
    if (stop) {
      const Vec<2> v = seg.eval(*stop);
      orbit.times.push_back(*stop);
      orbit.samples.push_back({v[0], v[1], eps});
      return orbit;
    }
    orbit.times.push_back(seg.t_new);
    orbit.samples.push_back({seg.y_new[0], seg.y_new[1], eps});
    if (seg.t_new == t_limit) return orbit;
  }
  throw IntegrationFailure("integrate_phase: step budget exhausted", ProfileState{});
}

}  // namespace h2r

#pragma once

// Generating curves of rotational translating solitons. A profile is an
// arc-length curve t -> (r(t), w(t)) in the meridian half-plane with tangent
// angle theta, so r' = cos(theta), w' = sin(theta), and the soliton equation
// H = nu reads theta' = 2 cos(theta) - sin(theta) coth(r).
//
// The phase picture uses y = r' (the angle function nu) and the orientation
// sign eps = sign(w').

#include <array>
#include <limits>
#include <stdexcept>
#include <vector>

#include "h2r/dop853.hpp"

namespace h2r {

struct ProfileState {
  double t = 0.0;
  double r = 0.0;
  double w = 0.0;
  double theta = 0.0;
};

struct OrbitSample {
  double r = 0.0;
  double y = 0.0;
  int eps = 1;
};

struct IntegratorConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double max_step = 0.05;
  double event_tol = 1e-12;
  double r_min_axis = 1e-3;

  /// Throws std::invalid_argument unless all fields are positive and event_tol <= abs_tol.
  void validate() const;
};

enum class EventKind { AxisReached, HorizontalTangency, GammaCrossing, RMaxReached, TMaxReached };

const char* to_string(EventKind kind);

struct Event {
  EventKind kind = EventKind::TMaxReached;
  double t = 0.0;
  ProfileState state;
  int eps = 1;            // orientation in effect when the event fired
  double residual = 0.0;  // |event function| at the located time
};

/// Raised when the right-hand side is evaluated on or beyond the rotation axis.
class AxisSingularity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an integration cannot proceed; carries the last accepted state.
class IntegrationFailure : public std::runtime_error {
 public:
  IntegrationFailure(const std::string& what, ProfileState last)
      : std::runtime_error(what), last_(last) {}
  const ProfileState& last_state() const { return last_; }

 private:
  ProfileState last_;
};

struct ArcLengthDerivative {
  double dr = 0.0;
  double dw = 0.0;
  double dtheta = 0.0;
};

/// (cos theta, sin theta, 2 cos theta - sin theta coth r).
ArcLengthDerivative rhs_arclength(const ProfileState& s);

/// F(r, y) = (y, (1 - y^2) coth r - 2 eps y sqrt(1 - y^2)).
std::array<double, 2> rhs_phase(const OrbitSample& o);

/// Sign of sin(theta), falling back to `fallback` on the horizontal.
int orientation_of(double theta, int fallback = 1);

enum class ProfileKind { Bowl, CatenoidUpper, CatenoidLower, Generic };

const char* to_string(ProfileKind kind);

struct ProfileSample {
  double t = 0.0;
  double r = 0.0;
  double w = 0.0;
  double theta = 0.0;
  int eps = 1;

  double y() const;
  ProfileState state() const { return {t, r, w, theta}; }
};

/// Sampled generating curve, ordered by increasing arc length, with the
/// integrator's dense output when it was produced by integration.
class SolitonProfile {
 public:
  SolitonProfile() = default;
  SolitonProfile(ProfileKind kind, std::vector<ProfileSample> samples,
                 std::vector<DenseSegment<3>> segments = {}, std::vector<Event> crossings = {});

  ProfileKind kind() const { return kind_; }
  void set_kind(ProfileKind k) { kind_ = k; }
  const std::vector<ProfileSample>& samples() const { return samples_; }
  const std::vector<Event>& crossings() const { return crossings_; }
  bool has_dense_output() const { return !segments_.empty(); }

  double t_begin() const;
  double t_end() const;

  /// Dense-output state at arc length t in [t_begin, t_end].
  ProfileState at(double t) const;
  /// Derivative of the dense interpolant (r', w', theta') at t.
  ArcLengthDerivative interpolant_derivative(double t) const;

  /// Joins two profiles that share an endpoint sample (this one ends where `next` begins).
  SolitonProfile joined(const SolitonProfile& next, ProfileKind kind) const;

 private:
  const DenseSegment<3>& segment_for(double t) const;

  ProfileKind kind_ = ProfileKind::Generic;
  std::vector<ProfileSample> samples_;
  std::vector<DenseSegment<3>> segments_;
  std::vector<Event> crossings_;
};

struct IntegrationLimits {
  double r_max = std::numeric_limits<double>::infinity();
  double r_axis = 1e-6;  // AxisReached once r falls to this radius
  double t_span = std::numeric_limits<double>::infinity();
  bool stop_at_horizontal = true;
  bool stop_at_gamma = false;
  long max_steps = 2'000'000;
};

struct IntegrationResult {
  SolitonProfile profile;
  Event event;
};

/// Continuation data produced at a horizontal tangency.
struct Continuation {
  ProfileState state;
  int eps = 1;
};

/// Integrates the arc-length system from `start` in the given direction until
/// the first terminal event. Gamma crossings are recorded without stopping
/// unless limits.stop_at_gamma is set. A start on the horizontal (sin theta = 0)
/// reports HorizontalTangency immediately.
IntegrationResult integrate(const ProfileState& start, int eps, const IntegratorConfig& cfg,
                            int direction, const IntegrationLimits& limits = {});

/// Resumes after switch_epsilon; the tangency at the start is not reported again.
IntegrationResult integrate(const Continuation& from, const IntegratorConfig& cfg, int direction,
                            const IntegrationLimits& limits = {});

/// Series solution through the axis with nu = 1 there, evaluated at r = cfg.r_min_axis.
ProfileState axis_start(const IntegratorConfig& cfg);

/// Truncated series of the regular axis solution, f(0) = 0, f'(0) = 0.
namespace axis_series {
double slope(double r);       // f'(r) = r + r^3/6 - r^5/30
double height(double r);      // f(r)  = r^2/2 + r^4/24 - r^6/180
double arc_length(double r);  // t(r)  = r + r^3/6 + r^5/120
}  // namespace axis_series

/// Flips the orientation sign at a horizontal tangency. Throws
/// std::logic_error for any other event kind.
Continuation switch_epsilon(const Event& e);

/// Orbit of the first-order phase system with fixed eps.
struct PhaseOrbit {
  int eps = 1;
  std::vector<double> times;
  std::vector<OrbitSample> samples;
  std::vector<DenseSegment<2>> segments;

  OrbitSample at(double t) const;
};

struct PhaseLimits {
  double t_span = 1.0;
  double y_guard = 1e-6;  // stop once |y| >= 1 - y_guard
  double r_min = 1e-6;
  double r_max = 50.0;
};

PhaseOrbit integrate_phase(const OrbitSample& start, const IntegratorConfig& cfg, int direction,
                           const PhaseLimits& limits = {});

}  // namespace h2r

#pragma once

// Pointwise checks of the soliton equation H = nu on rotational profiles, in
// the plain, weighted and conformal formulations, together with the height
// Laplacian identity, the weighted-area first variation and a census of
// height extrema.
//
// Conventions: unit normal eta = (-sin theta, cos theta) in the meridian
// (r, w) frame, so nu = <eta, d_z> = cos theta = r'; H = (kappa1 + kappa2) / 2.

#include <functional>
#include <string>
#include <vector>

#include "h2r/config.hpp"
#include "h2r/profile_ode.hpp"

namespace h2r {

/// Second-order data of a unit-speed profile at one point.
struct CurveJet {
  double t = 0.0;
  double r = 0.0;
  double w = 0.0;
  double theta = 0.0;
  double dtheta = 0.0;
  int eps = 1;
};

/// theta' taken from the arc-length system (analytic).
CurveJet jet_from_ode(const ProfileState& s, int eps = 1);
/// theta' taken from the dense interpolant instead (diagnostic).
CurveJet jet_from_interpolant(const SolitonProfile& p, double t);

struct PrincipalCurvatures {
  double kappa1 = 0.0;  // meridian: r' w'' - r'' w'
  double kappa2 = 0.0;  // parallels: w' coth r
};

/// Throws AxisSingularity for r <= 0.
PrincipalCurvatures principal_curvatures(const CurveJet& j);

struct CurvatureSample {
  double t = 0.0, r = 0.0, w = 0.0, theta = 0.0;
  double y = 0.0;  // nu
  int eps = 1;
  double kappa1 = 0.0, kappa2 = 0.0, H = 0.0;
  double H_weighted = 0.0;   // H - nu
  double H_conformal = 0.0;  // e^{-w/2} (H - nu)
  double residual = 0.0;     // H - nu
  double laplacian = 0.0;    // w'' + r' coth r w' - 2 H nu
};

CurvatureSample evaluate(const CurveJet& j);

/// H - nu.
double soliton_residual(const CurveJet& j);

struct WeightedConformal {
  double H_h = 0.0;
  double H_bar = 0.0;
};

WeightedConformal weighted_and_conformal_H(const CurveJet& j);

/// w'' + r' coth(r) w' - 2 H nu for the revolution metric dt^2 + sinh^2 r dtheta^2.
double laplacian_height_identity(const CurveJet& j);

/// Rotational patch t in [t_a, t_b] times the full circle, described by its jets.
struct SurfacePatch {
  double t_a = 0.0;
  double t_b = 0.0;
  std::function<CurveJet(double)> jet;
};

SurfacePatch profile_patch(const SolitonProfile& p, double t_a, double t_b);
/// The horizontal plane at height z over the annulus r_a <= r <= r_b (t = r).
SurfacePatch horizontal_plane_patch(double r_a, double r_b, double z);

/// omega(t, a) = amplitude * exp(-1 / (1 - x^2)) * (1 + beta cos(mode (a - phase))),
/// x = (t - center) / half_width, zero for |x| >= 1.
struct Bump {
  double center = 0.0;
  double half_width = 1.0;
  double amplitude = 1.0;
  double beta = 0.0;
  int mode = 1;
  double phase = 0.0;

  double value(double t, double a) const;
  double d_t(double t, double a) const;
  double d_a(double t, double a) const;
};

struct FirstVariation {
  double derivative = 0.0;  // central difference of the weighted area
  double predicted = 0.0;   // integral of (2H - c nu) omega e^{c w} dv
  double norm = 0.0;        // integral of |omega| e^{c w} dv
  double step = 0.0;
};

/// Derivative at s = 0 of A(s) = integral of e^{c h} dv over the patch moved
/// by s * omega along -eta, with density scale c (phi = c h). Throws
/// ContractViolation when the bump support touches the patch boundary.
FirstVariation weighted_area_first_variation(const SurfacePatch& patch, const Bump& bump, double density_scale,
                                             double step = 1e-4);

enum class ExtremumKind { Minimum, Maximum };

struct HeightExtremum {
  ExtremumKind kind = ExtremumKind::Minimum;
  double t = 0.0;
  double r = 0.0;
  double w = 0.0;
  bool on_axis = false;
};

/// Interior local extrema of w along the profile (sign changes of w'). A bowl
/// also reports its vertex on the axis.
std::vector<HeightExtremum> height_extrema_census(const SolitonProfile& p);

struct VerificationReport {
  std::string profile_id;
  std::size_t samples = 0;
  double max_soliton = 0.0;
  double max_weighted = 0.0;
  double max_conformal_scaled = 0.0;  // e^{w/2} |H_bar|
  double max_laplacian = 0.0;
  double max_unit_speed = 0.0;
  // |H - nu| with theta' from the curve data: the dense interpolant, or
  // three-point differences of the samples when there is none (reported only).
  double max_interpolant = 0.0;
  bool dense_output = false;
  double min_nu_margin = 0.0;    // min over samples of 1 - nu^2
  long sign_checked = 0;
  long kappa1_violations = 0;
  long kappa2_violations = 0;
  std::vector<HeightExtremum> extrema;
  Tolerances tolerances;
  IntegratorConfig config;

  long sign_violations() const { return kappa1_violations + kappa2_violations; }
  long interior_maxima() const;
  /// All residuals below tolerance (the curve-data residual only with dense
  /// output), no sign-law violations and no interior height maxima.
  bool passes() const;
};

/// Per-sample evaluation of every identity; the sign law for kappa1 compares
/// against y' from the first-order phase system.
std::vector<CurvatureSample> curvature_samples(const SolitonProfile& p);
VerificationReport verify_profile(const SolitonProfile& p, const std::string& id, const IntegratorConfig& cfg = {},
                                  const Tolerances& tol = default_tolerances());

}  // namespace h2r

#include "h2r/verification.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

namespace h2r {

CurveJet jet_from_ode(const ProfileState& s, int eps) {
  const ArcLengthDerivative d = rhs_arclength(s);
  return {s.t, s.r, s.w, s.theta, d.dtheta, eps};
}

CurveJet jet_from_interpolant(const SolitonProfile& p, double t) {
  const ProfileState s = p.at(t);
  return {t, s.r, s.w, s.theta, p.interpolant_derivative(t).dtheta, orientation_of(s.theta)};
}

PrincipalCurvatures principal_curvatures(const CurveJet& j) {
  if (!(j.r > 0.0)) throw AxisSingularity("principal_curvatures: r must be positive");
  const double c = std::cos(j.theta), s = std::sin(j.theta);
  const double r1 = c, w1 = s;
  const double r2 = -s * j.dtheta, w2 = c * j.dtheta;
  return {r1 * w2 - r2 * w1, w1 / std::tanh(j.r)};
}

CurvatureSample evaluate(const CurveJet& j) {
  const PrincipalCurvatures k = principal_curvatures(j);
  CurvatureSample out;
  out.t = j.t;
  out.r = j.r;
  out.w = j.w;
  out.theta = j.theta;
  out.y = std::cos(j.theta);
  out.eps = j.eps;
  out.kappa1 = k.kappa1;
  out.kappa2 = k.kappa2;
  out.H = 0.5 * (k.kappa1 + k.kappa2);
  out.residual = out.H - out.y;
  out.H_weighted = out.residual;
  out.H_conformal = std::exp(-0.5 * j.w) * out.H_weighted;
  out.laplacian = laplacian_height_identity(j);
  return out;
}

double soliton_residual(const CurveJet& j) {
  const PrincipalCurvatures k = principal_curvatures(j);
  return 0.5 * (k.kappa1 + k.kappa2) - std::cos(j.theta);
}

WeightedConformal weighted_and_conformal_H(const CurveJet& j) {
  const double h = soliton_residual(j);
  return {h, std::exp(-0.5 * j.w) * h};
}

double laplacian_height_identity(const CurveJet& j) {
  const PrincipalCurvatures k = principal_curvatures(j);
  const double c = std::cos(j.theta), s = std::sin(j.theta);
  const double H = 0.5 * (k.kappa1 + k.kappa2);
  const double w2 = c * j.dtheta;
  return w2 + c / std::tanh(j.r) * s - 2.0 * H * c;
}

// ---------------------------------------------------------- first variation

SurfacePatch profile_patch(const SolitonProfile& p, double t_a, double t_b) {
  if (!(t_b > t_a) || t_a < p.t_begin() || t_b > p.t_end()) {
    throw ContractViolation("profile_patch: arc-length range outside the profile");
  }
  const SolitonProfile* prof = &p;
  return {t_a, t_b, [prof](double t) {
            const ProfileState s = prof->at(t);
            return jet_from_ode(s, orientation_of(s.theta));
          }};
}

SurfacePatch horizontal_plane_patch(double r_a, double r_b, double z) {
  if (!(r_a > 0.0 && r_b > r_a)) throw ContractViolation("horizontal_plane_patch: need 0 < r_a < r_b");
  return {r_a, r_b, [z](double t) { return CurveJet{t, t, z, 0.0, 0.0, 1}; }};
}

namespace {

double bump_profile(double x) { return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; }

double bump_profile_derivative(double x) {
  if (!(std::abs(x) < 1.0)) return 0.0;
  const double q = 1.0 - x * x;
  return bump_profile(x) * (-2.0 * x / (q * q));
}

}  // namespace

double Bump::value(double t, double a) const {
  const double x = (t - center) / half_width;
  return amplitude * bump_profile(x) * (1.0 + beta * std::cos(mode * (a - phase)));
}

double Bump::d_t(double t, double a) const {
  const double x = (t - center) / half_width;
  return amplitude * bump_profile_derivative(x) / half_width * (1.0 + beta * std::cos(mode * (a - phase)));
}

double Bump::d_a(double t, double a) const {
  const double x = (t - center) / half_width;
  return amplitude * bump_profile(x) * (-beta * mode * std::sin(mode * (a - phase)));
}

FirstVariation weighted_area_first_variation(const SurfacePatch& patch, const Bump& bump, double c, double step) {
  if (!(bump.half_width > 0.0)) throw ContractViolation("weighted_area_first_variation: bump half-width must be positive");
  const double lo = bump.center - bump.half_width, hi = bump.center + bump.half_width;
  if (!(lo > patch.t_a && hi < patch.t_b)) {
    throw ContractViolation("weighted_area_first_variation: bump support touches the patch boundary");
  }
  if (!(step > 0.0)) throw std::invalid_argument("weighted_area_first_variation: step must be positive");

  constexpr int kPanels = 64;
  constexpr int kAngles = 64;
  using Gauss = boost::math::quadrature::gauss<double, 20>;

  // Weighted area element of the patch moved by s * omega along -eta.
  auto element = [&](const CurveJet& j, double om, double om_t, double om_a, double s) {
    const double ct = std::cos(j.theta), st = std::sin(j.theta);
    const double r = j.r + s * om * st;
    const double w = j.w - s * om * ct;
    const double r_t = ct + s * (om_t * st + om * ct * j.dtheta);
    const double w_t = st - s * (om_t * ct - om * st * j.dtheta);
    const double r_a = s * om_a * st;
    const double w_a = -s * om_a * ct;
    const double sh = std::sinh(r);
    const double E = r_t * r_t + w_t * w_t;
    const double F = r_t * r_a + w_t * w_a;
    const double G = r_a * r_a + w_a * w_a + sh * sh;
    return std::exp(c * w) * std::sqrt(E * G - F * F);
  };

  FirstVariation out;
  out.step = step;
  const double da = 2.0 * std::numbers::pi / kAngles;
  const double panel = (hi - lo) / kPanels;
  for (int k = 0; k < kPanels; ++k) {
    const double a0 = lo + k * panel;
    auto along_t = [&](double t, int which) {
      const CurveJet j = patch.jet(t);
      const double ct = std::cos(j.theta), st = std::sin(j.theta);
      const double H = 0.5 * (j.dtheta + st / std::tanh(j.r));
      const double dv = std::sinh(j.r);
      double acc = 0.0;
      for (int m = 0; m < kAngles; ++m) {
        const double a = m * da;
        const double om = bump.value(t, a);
        if (which == 0) {
          const double om_t = bump.d_t(t, a), om_a = bump.d_a(t, a);
          acc += (element(j, om, om_t, om_a, step) - element(j, om, om_t, om_a, -step)) / (2.0 * step);
        } else if (which == 1) {
          acc += (2.0 * H - c * ct) * om * std::exp(c * j.w) * dv;
        } else {
          acc += std::abs(om) * std::exp(c * j.w) * dv;
        }
      }
      return acc * da;
    };
    out.derivative += Gauss::integrate([&](double t) { return along_t(t, 0); }, a0, a0 + panel);
    out.predicted += Gauss::integrate([&](double t) { return along_t(t, 1); }, a0, a0 + panel);
    out.norm += Gauss::integrate([&](double t) { return along_t(t, 2); }, a0, a0 + panel);
  }
  return out;
}

// ------------------------------------------------------------------ extrema

std::vector<HeightExtremum> height_extrema_census(const SolitonProfile& p) {
  constexpr double kFlat = 1e-14;
  std::vector<HeightExtremum> out;
  const auto& s = p.samples();
  if (p.kind() == ProfileKind::Bowl) out.push_back({ExtremumKind::Minimum, p.t_begin(), 0.0, 0.0, true});

  auto sgn = [&](std::size_t i) {
    const double v = std::sin(s[i].theta);
    return std::abs(v) < kFlat ? 0 : (v > 0 ? 1 : -1);
  };
  int prev_sign = 0;
  std::size_t prev_idx = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int g = sgn(i);
    if (g == 0) continue;
    if (prev_sign != 0 && g != prev_sign) {
      HeightExtremum e;
      e.kind = prev_sign > 0 ? ExtremumKind::Maximum : ExtremumKind::Minimum;
      double t = 0.5 * (s[prev_idx].t + s[i].t);
      if (p.has_dense_output()) {
        auto f = [&](double tt) { return std::sin(p.at(tt).theta); };
        auto tol = [](double a, double b) { return std::abs(b - a) < 1e-14 * std::max(1.0, std::abs(a)); };
        boost::uintmax_t iters = 100;
        const auto [a, b] = boost::math::tools::toms748_solve(f, s[prev_idx].t, s[i].t, tol, iters);
        t = 0.5 * (a + b);
        const ProfileState st = p.at(t);
        e.r = st.r;
        e.w = st.w;
      } else {
        // Extreme sample among those bracketing the turn.
        std::size_t k = prev_idx;
        for (std::size_t m = prev_idx; m <= i; ++m) {
          const bool better = e.kind == ExtremumKind::Maximum ? s[m].w > s[k].w : s[m].w < s[k].w;
          if (better) k = m;
        }
        e.r = s[k].r;
        e.w = s[k].w;
        t = s[k].t;
      }
      e.t = t;
      out.push_back(e);
    }
    prev_sign = g;
    prev_idx = i;
  }
  return out;
}

// ------------------------------------------------------------------- report

long VerificationReport::interior_maxima() const {
  return std::count_if(extrema.begin(), extrema.end(),
                       [](const HeightExtremum& e) { return e.kind == ExtremumKind::Maximum && !e.on_axis; });
}

bool VerificationReport::passes() const {
  const double tol = tolerances.soliton_residual;
  return max_soliton < tol && max_weighted < tol && max_conformal_scaled < tol &&
         max_laplacian < tolerances.laplacian_residual && sign_violations() == 0 && interior_maxima() == 0 &&
         (!dense_output || max_interpolant < tol);
}

std::vector<CurvatureSample> curvature_samples(const SolitonProfile& p) {
  std::vector<CurvatureSample> out;
  out.reserve(p.samples().size());
  for (const auto& s : p.samples()) out.push_back(evaluate(jet_from_ode(s.state(), s.eps)));
  return out;
}

VerificationReport verify_profile(const SolitonProfile& p, const std::string& id, const IntegratorConfig& cfg,
                                  const Tolerances& tol) {
  VerificationReport rep;
  rep.profile_id = id;
  rep.samples = p.samples().size();
  rep.dense_output = p.has_dense_output();
  rep.tolerances = tol;
  rep.config = cfg;
  rep.min_nu_margin = 1.0;
  for (const auto& s : p.samples()) {
    const CurvatureSample c = evaluate(jet_from_ode(s.state(), s.eps));
    rep.max_soliton = std::max(rep.max_soliton, std::abs(c.residual));
    rep.max_weighted = std::max(rep.max_weighted, std::abs(c.H_weighted));
    rep.max_conformal_scaled = std::max(rep.max_conformal_scaled, std::exp(0.5 * c.w) * std::abs(c.H_conformal));
    rep.max_laplacian = std::max(rep.max_laplacian, std::abs(c.laplacian));
    const double ct = std::cos(s.theta), st = std::sin(s.theta);
    rep.max_unit_speed = std::max(rep.max_unit_speed, std::abs(ct * ct + st * st - 1.0));
    rep.min_nu_margin = std::min(rep.min_nu_margin, 1.0 - c.y * c.y);
    if (p.has_dense_output()) {
      const CurvatureSample ci = evaluate(jet_from_interpolant(p, s.t));
      rep.max_interpolant = std::max(rep.max_interpolant, std::abs(ci.residual));
    }

    // Sign laws: sign(kappa1) = sign(-eps y'), sign(kappa2) = sign(eps).
    const double dy = rhs_phase(OrbitSample{s.r, std::clamp(ct, -1.0, 1.0), s.eps})[1];
    const bool k1_checked = std::abs(dy) >= tol.sign_law_guard && std::abs(c.kappa1) >= tol.sign_law_guard;
    const bool k2_checked = std::abs(st) >= tol.sign_law_guard;
    if (k1_checked || k2_checked) ++rep.sign_checked;
    if (k1_checked && (c.kappa1 > 0) != (-s.eps * dy > 0)) ++rep.kappa1_violations;
    if (k2_checked && (c.kappa2 > 0) != (s.eps > 0)) ++rep.kappa2_violations;
  }
  if (!p.has_dense_output()) {
    // Without dense output, theta' comes from the samples themselves (three-point differences).
    const auto& s = p.samples();
    for (std::size_t i = 0; s.size() >= 3 && i < s.size(); ++i) {
      const std::size_t a = i == 0 ? 0 : (i + 1 == s.size() ? i - 2 : i - 1);
      const double t0 = s[a].t, t1 = s[a + 1].t, t2 = s[a + 2].t, t = s[i].t;
      const double d = s[a].theta * (2 * t - t1 - t2) / ((t0 - t1) * (t0 - t2)) +
                       s[a + 1].theta * (2 * t - t0 - t2) / ((t1 - t0) * (t1 - t2)) +
                       s[a + 2].theta * (2 * t - t0 - t1) / ((t2 - t0) * (t2 - t1));
      const CurveJet j{t, s[i].r, s[i].w, s[i].theta, d, s[i].eps};
      rep.max_interpolant = std::max(rep.max_interpolant, std::abs(soliton_residual(j)));
    }
  }
  rep.extrema = height_extrema_census(p);
  return rep;
}

}  // namespace h2r

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "h2r/soliton_builders.hpp"
#include "h2r/verification.hpp"
#include "support.hpp"

using namespace h2r;
using testing_support::coth_exp;
using testing_support::uniform;

namespace {

const BowlSoliton& bowl8() {
  static const BowlSoliton b = build_bowl(8.0);
  return b;
}

const Catenoid& cat1() {
  static const Catenoid c = build_catenoid(1.0, 6.0);
  return c;
}

// Composite Simpson rule.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("principal curvatures: neck, cylinder and near-vertex umbilic") {
  for (double r0 : {0.1, 1.0, 3.0}) {
    const CurveJet neck = jet_from_ode({0.0, r0, 0.0, std::numbers::pi / 2});
    const auto k = principal_curvatures(neck);
    CHECK(k.kappa2 == doctest::Approx(coth_exp(r0)).epsilon(1e-13));
    CHECK(k.kappa1 == doctest::Approx(-coth_exp(r0)).epsilon(1e-13));
    CHECK(std::abs(soliton_residual(neck)) < 1e-14);
  }
  // A vertical cylinder is not a soliton: H - nu = coth(r) / 2.
  for (double r : {0.5, 1.0, 4.0}) {
    const CurveJet cyl{0.0, r, 0.0, std::numbers::pi / 2, 0.0, 1};
    CHECK(soliton_residual(cyl) == doctest::Approx(coth_exp(r) / 2).epsilon(1e-13));
  }
  // Near the bowl vertex both curvatures approach nu = 1.
  const auto s = bowl8().profile().samples().front();
  const auto k = principal_curvatures(jet_from_ode(s.state()));
  CHECK(k.kappa1 == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(k.kappa2 == doctest::Approx(1.0).epsilon(1e-5));
  CHECK_THROWS_AS(principal_curvatures(CurveJet{0.0, 0.0, 0.0, 0.0, 1.0, 1}), AxisSingularity);
}

TEST_CASE("principal curvatures against a finite-difference oracle on the bowl") {
  const auto& p = bowl8().profile();
  for (int i = 0; i < 100; ++i) {
    const double t = uniform(p.t_begin() + 0.01, p.t_end() - 0.01), h = 1e-4;
    const auto a = p.at(t - h), m = p.at(t), b = p.at(t + h);
    const double r1 = (b.r - a.r) / (2 * h), w1 = (b.w - a.w) / (2 * h);
    const double r2 = (b.r - 2 * m.r + a.r) / (h * h), w2 = (b.w - 2 * m.w + a.w) / (h * h);
    const auto k = principal_curvatures(jet_from_ode(m));
    CHECK(std::abs(k.kappa1 - (r1 * w2 - r2 * w1)) < 1e-5);
    CHECK(std::abs(k.kappa2 - w1 * coth_exp(m.r)) < 1e-7);
  }
}

TEST_CASE("evaluate keeps 2H = kappa1 + kappa2 exactly") {
  for (int i = 0; i < 1000; ++i) {
    const CurveJet j{0.0, uniform(0.01, 10.0), uniform(-5.0, 5.0), uniform(-3.1, 3.1), uniform(-5.0, 5.0), 1};
    const auto c = evaluate(j);
    CHECK(2.0 * c.H == c.kappa1 + c.kappa2);
    CHECK(c.residual == c.H - c.y);
    CHECK(c.H_conformal == doctest::Approx(std::exp(-c.w / 2) * c.H_weighted).epsilon(1e-14));
  }
}

TEST_CASE("sign laws of the principal curvatures on 10^4 soliton jets") {
  long checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const double r = uniform(0.05, 10.0), th = uniform(-3.1, 3.1);
    const int eps = orientation_of(th);
    const CurveJet j = jet_from_ode({0.0, r, 0.0, th}, eps);
    const auto k = principal_curvatures(j);
    const double y = std::cos(th), q = 1.0 - y * y;
    const double dy = q * coth_exp(r) - 2.0 * eps * y * std::sqrt(q);
    if (std::abs(dy) < 1e-8 || std::abs(k.kappa1) < 1e-8 || std::abs(std::sin(th)) < 1e-8) continue;
    ++checked;
    CHECK((k.kappa1 > 0) == (-eps * dy > 0));
    CHECK((k.kappa2 > 0) == (eps > 0));
  }
  CHECK(checked > 9900);
}

TEST_CASE("weighted and conformal mean curvature") {
  // Horizontal plane: H = 0, nu = 1, so H_h = -1 and H_bar = -e^{-z/2}.
  for (double z : {-2.0, 0.0, 1.5}) {
    const CurveJet j{0.0, 1.0, z, 0.0, 0.0, 1};
    const auto wc = weighted_and_conformal_H(j);
    CHECK(wc.H_h == -1.0);
    CHECK(wc.H_bar == doctest::Approx(-std::exp(-z / 2)).epsilon(1e-15));
  }
  // Solitons are weighted- and conformally-minimal.
  for (const auto& s : bowl8().profile().samples()) {
    const auto wc = weighted_and_conformal_H(jet_from_ode(s.state(), s.eps));
    CHECK(std::abs(wc.H_h) < 1e-12);
    CHECK(std::abs(wc.H_bar) * std::exp(s.w / 2) < 1e-12);
  }
}

TEST_CASE("height Laplacian identity") {
  // Holds for any rotational surface, soliton or not.
  for (int i = 0; i < 1000; ++i) {
    const CurveJet j{0.0, uniform(0.01, 10.0), 0.0, uniform(-3.1, 3.1), uniform(-5.0, 5.0), 1};
    CHECK(std::abs(laplacian_height_identity(j)) < 1e-12 * (1.0 + std::abs(j.dtheta) + coth_exp(j.r)));
  }
  // Oracle on the bowl: (1/sinh r) d/dt (sinh r w') by differences equals 2 nu^2.
  const auto& p = bowl8().profile();
  for (int i = 0; i < 100; ++i) {
    const double t = uniform(p.t_begin() + 0.01, p.t_end() - 0.01), h = 1e-4;
    auto flux = [&](double tt) {
      const auto s = p.at(tt);
      return std::sinh(s.r) * std::sin(s.theta);
    };
    const auto m = p.at(t);
    const double lap = (flux(t + h) - flux(t - h)) / (2 * h) / std::sinh(m.r);
    const double nu = std::cos(m.theta);
    CHECK(std::abs(lap - 2.0 * nu * nu) < 1e-6);
  }
}

TEST_CASE("first variation of the weighted area vanishes on solitons (c = 2)") {
  const auto& b = bowl8().profile();
  const auto& c = cat1().upper;
  const SurfacePatch pb = profile_patch(b, 0.2, 6.0);
  const SurfacePatch pc = profile_patch(c, 0.0, 4.0);
  for (int i = 0; i < 5; ++i) {
    Bump bump;
    bump.half_width = uniform(0.3, 1.0);
    bump.amplitude = uniform(0.5, 2.0);
    bump.beta = uniform(0.0, 0.9);
    bump.mode = 1 + i % 3;
    bump.phase = uniform(0.0, 6.28);
    for (const SurfacePatch* patch : {&pb, &pc}) {
      bump.center = uniform(patch->t_a + bump.half_width + 0.05, patch->t_b - bump.half_width - 0.05);
      const auto v = weighted_area_first_variation(*patch, bump, 2.0);
      CHECK(v.norm > 0.0);
      CHECK(std::abs(v.derivative) / v.norm < 1e-5);
      CHECK(std::abs(v.predicted) / v.norm < 1e-8);
    }
  }
}

TEST_CASE("first variation with density e^h (c = 1) matches the formula") {
  // Horizontal plane: derivative = -integral of omega e^h dv; oracle by Simpson's rule.
  const SurfacePatch plane = horizontal_plane_patch(0.5, 3.0, 0.7);
  Bump bump;
  bump.center = 1.7;
  bump.half_width = 0.8;
  bump.amplitude = 1.3;
  bump.beta = 0.5;
  bump.mode = 2;
  const auto v = weighted_area_first_variation(plane, bump, 1.0);
  // The angular factor averages to one.
  const double oracle = -2.0 * std::numbers::pi * std::exp(0.7) *
                        simpson([&](double r) { return bump.value(r, std::numbers::pi / 4) * std::sinh(r); },
                                bump.center - bump.half_width, bump.center + bump.half_width, 4000);
  CHECK(v.derivative == doctest::Approx(oracle).epsilon(1e-4));
  CHECK(v.predicted == doctest::Approx(oracle).epsilon(1e-8));

  // On the bowl, 2H - nu = nu.
  const SurfacePatch pb = profile_patch(bowl8().profile(), 0.2, 6.0);
  bump.center = 3.0;
  const auto w = weighted_area_first_variation(pb, bump, 1.0);
  CHECK(w.derivative == doctest::Approx(w.predicted).epsilon(1e-6));
  CHECK(w.predicted > 0.0);
}

TEST_CASE("first variation: trivial and invalid bumps") {
  const SurfacePatch plane = horizontal_plane_patch(0.5, 3.0, 0.0);
  Bump zero;
  zero.center = 1.5;
  zero.half_width = 0.5;
  zero.amplitude = 0.0;
  const auto v = weighted_area_first_variation(plane, zero, 2.0);
  CHECK(v.derivative == 0.0);
  CHECK(v.predicted == 0.0);

  Bump touching;
  touching.center = 0.9;
  touching.half_width = 0.5;
  CHECK_THROWS_AS(weighted_area_first_variation(plane, touching, 2.0), ContractViolation);
  CHECK_THROWS_AS(horizontal_plane_patch(0.0, 1.0, 0.0), ContractViolation);
  CHECK_THROWS_AS(profile_patch(bowl8().profile(), -1.0, 1.0), ContractViolation);
}

TEST_CASE("bump derivatives match finite differences") {
  Bump b;
  b.center = 2.0;
  b.half_width = 0.7;
  b.amplitude = 1.5;
  b.beta = 0.4;
  b.mode = 3;
  b.phase = 0.3;
  for (int i = 0; i < 100; ++i) {
    const double t = uniform(1.35, 2.65), a = uniform(0.0, 6.3), h = 1e-6;
    CHECK(b.d_t(t, a) == doctest::Approx((b.value(t + h, a) - b.value(t - h, a)) / (2 * h)).epsilon(1e-5));
    CHECK(b.d_a(t, a) == doctest::Approx((b.value(t, a + h) - b.value(t, a - h)) / (2 * h)).epsilon(1e-5));
  }
  CHECK(b.value(2.7, 0.0) == 0.0);
  CHECK(b.value(1.0, 0.0) == 0.0);
}

TEST_CASE("height extrema census") {
  // Bowl: only the vertex, a minimum on the axis.
  const auto eb = height_extrema_census(bowl8().profile());
  REQUIRE(eb.size() == 1);
  CHECK(eb[0].on_axis);
  CHECK(eb[0].kind == ExtremumKind::Minimum);

  // Catenoid: a single minimum at the turning circle.
  const auto ec = height_extrema_census(cat1().full());
  REQUIRE(ec.size() == 1);
  CHECK(ec[0].kind == ExtremumKind::Minimum);
  CHECK(ec[0].r == doctest::Approx(cat1().turning_radius).epsilon(1e-9));
  CHECK(ec[0].w == doctest::Approx(cat1().turning.state.w).epsilon(1e-9));

  // Synthetic cap r = 1 + s, w = -(s - 1)^2 sampled without dense output: one interior maximum.
  std::vector<ProfileSample> samples;
  double t = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double s = 2.0 * i / 200.0;
    if (i > 0) {
      const double sp = 2.0 * (i - 1) / 200.0;
      t += std::hypot(s - sp, -(s - 1) * (s - 1) + (sp - 1) * (sp - 1));
    }
    const double th = std::atan2(-2.0 * (s - 1.0), 1.0);
    samples.push_back({t, 1.0 + s, -(s - 1.0) * (s - 1.0), th, orientation_of(th)});
  }
  const SolitonProfile cap(ProfileKind::Generic, samples);
  const auto es = height_extrema_census(cap);
  REQUIRE(es.size() == 1);
  CHECK(es[0].kind == ExtremumKind::Maximum);
  CHECK(es[0].r == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(es[0].w == 0.0);
}

TEST_CASE("verify_profile on built solitons") {
  for (const auto* p : {&bowl8().profile()}) {
    const auto rep = verify_profile(*p, "bowl");
    CHECK(rep.passes());
    CHECK(rep.max_soliton < 1e-12);
    CHECK(rep.max_laplacian < 1e-12);
    CHECK(rep.max_interpolant < 1e-8);
    CHECK(rep.sign_checked > 100);
    CHECK(rep.interior_maxima() == 0);
    CHECK(rep.samples == p->samples().size());
  }
  const auto full = cat1().full();
  const auto rc = verify_profile(full, "catenoid");
  CHECK(rc.passes());
  CHECK(rc.sign_violations() == 0);
  CHECK(rc.extrema.size() == 1);

  // A cylinder given as bare samples: the ODE-based residual cannot see it,
  // the residual from the sampled angle can.
  std::vector<ProfileSample> cyl;
  for (int i = 0; i <= 10; ++i) cyl.push_back({0.1 * i, 1.0, 0.1 * i, std::numbers::pi / 2, 1});
  const auto bad = verify_profile(SolitonProfile(ProfileKind::Generic, cyl), "cylinder");
  CHECK(!bad.dense_output);
  CHECK(bad.max_interpolant == doctest::Approx(coth_exp(1.0) / 2).epsilon(1e-12));

  // Sampled bowl: three-point differences track the dense check to O(h^2).
  const auto& bs = bowl8().profile().samples();
  const auto sampled = verify_profile(SolitonProfile(ProfileKind::Bowl, bs), "bowl-samples");
  CHECK(sampled.max_interpolant < 1e-2);
  CHECK(sampled.max_soliton < 1e-12);
}

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "h2r/phase_portrait.hpp"
#include "h2r/profile_ode.hpp"
#include "support.hpp"

using namespace h2r;
using testing_support::coth_exp;
using testing_support::uniform;

TEST_CASE("arc-length right-hand side") {
  const auto a = rhs_arclength({0.0, 1.0, 0.0, 0.0});
  CHECK(a.dr == 1.0);
  CHECK(a.dw == 0.0);
  CHECK(a.dtheta == 2.0);

  const auto b = rhs_arclength({0.0, 1.0, 0.0, std::numbers::pi / 2});
  CHECK(std::abs(b.dr) < 1e-16);
  CHECK(b.dw == 1.0);
  CHECK(b.dtheta == doctest::Approx(-coth_exp(1.0)).epsilon(1e-14));
  CHECK(b.dtheta == doctest::Approx(-1.31304).epsilon(1e-5));

  CHECK(rhs_arclength({0.0, 1e-9, 0.0, std::numbers::pi / 2}).dtheta < -1e8);
  CHECK_THROWS_AS(rhs_arclength({0.0, 0.0, 0.0, 1.0}), AxisSingularity);
  CHECK_THROWS_AS(rhs_arclength({0.0, -1.0, 0.0, 1.0}), AxisSingularity);
}

TEST_CASE("phase right-hand side") {
  const auto a = rhs_phase({1.0, 0.0, 1});
  CHECK(a[0] == 0.0);
  CHECK(a[1] == doctest::Approx(coth_exp(1.0)).epsilon(1e-14));

  for (double r : {0.1, 1.0, 7.0}) {
    const auto b = rhs_phase({r, 1.0, 1});
    CHECK(b[0] == 1.0);
    CHECK(b[1] == 0.0);
  }

  // On Gamma_1 the second component vanishes; Gamma from the log form of artanh.
  const double g = testing_support::atanh_log(std::sqrt(1.0 - 0.81) / 1.8);
  CHECK(std::abs(rhs_phase({g, 0.9, 1})[1]) < 1e-12);
  CHECK(std::abs(rhs_phase({gamma(0.9, 1), 0.9, 1})[1]) < 1e-12);

  CHECK_THROWS_AS(rhs_phase({0.0, 0.5, 1}), AxisSingularity);
}

TEST_CASE("phase and arc-length forms agree: y' = -sin(theta) theta'") {
  for (int i = 0; i < 500; ++i) {
    const double r = uniform(0.05, 8.0), th = uniform(-3.1, 3.1);
    const auto d = rhs_arclength({0.0, r, 0.0, th});
    const auto F = rhs_phase({r, std::cos(th), orientation_of(th)});
    CHECK(F[0] == doctest::Approx(d.dr).epsilon(1e-14));
    CHECK(std::abs(F[1] - (-std::sin(th) * d.dtheta)) < 1e-12 * (1.0 + std::abs(F[1])));
  }
}

TEST_CASE("IntegratorConfig validation") {
  IntegratorConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.event_tol = 1e-9;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.max_step = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("integrating from a vertical tangent moves outwards") {
  IntegratorConfig cfg;
  IntegrationLimits lim;
  lim.t_span = 0.5;
  const auto res = integrate({0.0, 1.0, 0.0, std::numbers::pi / 2}, 1, cfg, 1, lim);
  CHECK(res.event.kind == EventKind::TMaxReached);
  const auto& s = res.profile.samples();
  REQUIRE(s.size() > 3);
  for (std::size_t i = 1; i < 4; ++i) CHECK(s[i].r > s[i - 1].r);
  CHECK(s[1].theta < std::numbers::pi / 2);
}

TEST_CASE("a start on y = 1 reports a horizontal tangency at once") {
  IntegratorConfig cfg;
  const auto res = integrate({0.0, 2.0, 0.0, 0.0}, 1, cfg, 1);
  CHECK(res.event.kind == EventKind::HorizontalTangency);
  CHECK(res.event.t == 0.0);
  CHECK(res.profile.samples().size() == 1);
}

TEST_CASE("axis series coefficients") {
  CHECK(axis_series::slope(0.0) == 0.0);
  CHECK(axis_series::height(0.0) == 0.0);
  // Linear coefficient: phi = c r in phi' = (1 + phi^2)(2 - phi coth r) gives c = 2 - c.
  const double r = 1e-5;
  CHECK(axis_series::slope(r) / r == doctest::Approx(1.0).epsilon(1e-9));
  // Cubic coefficient: 3a = 2/3 - a.
  const double rr = 1e-2;
  CHECK((axis_series::slope(rr) - rr) / (rr * rr * rr) == doctest::Approx(1.0 / 6.0).epsilon(1e-4));
  // The truncated series solves the equation to high order.
  auto residual = [](double x) {
    const double p = axis_series::slope(x);
    const double dp = 1.0 + x * x / 2.0 - x * x * x * x / 6.0;
    return dp - (1.0 + p * p) * (2.0 - p / std::tanh(x));
  };
  const double ratio = std::abs(residual(0.04) / residual(0.02));
  CHECK(ratio > 30.0);  // at least fifth order
  // Height is the antiderivative of the slope series.
  const double h = 1e-4, x = 0.3;
  CHECK((axis_series::height(x + h) - axis_series::height(x - h)) / (2 * h) ==
        doctest::Approx(axis_series::slope(x)).epsilon(1e-8));
}

TEST_CASE("axis_start lies on the series") {
  IntegratorConfig cfg;
  const ProfileState s = axis_start(cfg);
  CHECK(s.r == cfg.r_min_axis);
  CHECK(std::tan(s.theta) == doctest::Approx(axis_series::slope(s.r)).epsilon(1e-14));
  CHECK(s.w == doctest::Approx(s.r * s.r / 2).epsilon(1e-5));
}

TEST_CASE("switch_epsilon contract") {
  Event e;
  e.kind = EventKind::GammaCrossing;
  CHECK_THROWS_AS(switch_epsilon(e), std::logic_error);
  e.kind = EventKind::HorizontalTangency;
  e.eps = 1;
  CHECK(switch_epsilon(e).eps == -1);
  e.eps = -1;
  CHECK(switch_epsilon(e).eps == 1);
}

TEST_CASE("catenoid turning circle: event, continuation region and height minimum") {
  IntegratorConfig cfg;
  const double r0 = 1.0;
  const auto down = integrate({0.0, r0, 0.0, std::numbers::pi / 2}, 1, cfg, -1);
  REQUIRE(down.event.kind == EventKind::HorizontalTangency);
  const Event& ev = down.event;
  CHECK(ev.state.r > r0);
  CHECK(std::cos(ev.state.theta) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(ev.residual < cfg.event_tol);

  const Continuation c = switch_epsilon(ev);
  CHECK(c.eps == -ev.eps);
  CHECK(classify(OrbitSample{c.state.r, std::cos(c.state.theta), c.eps}) == Region::LambdaMinus1Plus);

  IntegrationLimits lim;
  lim.r_max = 4.0;
  const auto out = integrate(c, cfg, -1, lim);
  CHECK(out.event.kind == EventKind::RMaxReached);
  // w' changes sign: the turning circle is a local minimum of the height.
  const double w_before = down.profile.at(ev.t + 0.05).w;
  const double w_after = out.profile.at(ev.t - 0.05).w;
  CHECK(w_before > ev.state.w);
  CHECK(w_after > ev.state.w);
  // Orientation after the switch.
  CHECK(out.profile.samples().front().eps == -1);
}

TEST_CASE("unit speed on every sample") {
  IntegratorConfig cfg;
  IntegrationLimits lim;
  lim.r_max = 8.0;
  const auto res = integrate(axis_start(cfg), 1, cfg, 1, lim);
  for (const auto& s : res.profile.samples()) {
    const auto d = rhs_arclength(s.state());
    CHECK(std::abs(d.dr * d.dr + d.dw * d.dw - 1.0) < 1e-13);
  }
}

TEST_CASE("phase and arc-length integrations trace the same curve") {
  IntegratorConfig cfg;
  cfg.abs_tol = cfg.rel_tol = 1e-12;
  for (const double th0 : {0.5, 1.2, -0.7, 2.4}) {
    const double r0 = 1.3;
    IntegrationLimits lim;
    lim.t_span = 1.5;
    lim.stop_at_horizontal = false;
    const auto a = integrate({0.0, r0, 0.0, th0}, orientation_of(th0), cfg, 1, lim);
    PhaseLimits pl;
    pl.t_span = 1.5;
    const auto b = integrate_phase({r0, std::cos(th0), orientation_of(th0)}, cfg, 1, pl);
    // Both systems use arc length as parameter: compare at equal t.
    const double t_end = std::min(a.profile.t_end(), b.times.back());
    for (int i = 0; i <= 50; ++i) {
      const double t = t_end * i / 50.0;
      const ProfileState s = a.profile.at(t);
      const OrbitSample o = b.at(t);
      CHECK(std::abs(s.r - o.r) < 1e-9);
      CHECK(std::abs(std::cos(s.theta) - o.y) < 1e-9);
    }
  }
}

TEST_CASE("orbits are locally graphs y(r) with the predicted slope") {
  IntegratorConfig cfg;
  cfg.abs_tol = cfg.rel_tol = 1e-12;
  for (int i = 0; i < 200; ++i) {
    const double r0 = uniform(0.2, 6.0);
    double y0 = uniform(-0.95, 0.95);
    if (std::abs(y0) < 0.05) y0 = 0.3;
    const int eps = testing_support::coin();
    PhaseLimits pl;
    pl.t_span = 0.01;
    const auto orb = integrate_phase({r0, y0, eps}, cfg, 1, pl);
    const double tm = 0.005, h = 1e-4;
    const OrbitSample a = orb.at(tm - h), b = orb.at(tm + h), m = orb.at(tm);
    const double fd = (b.y - a.y) / (b.r - a.r);
    const double q = 1.0 - m.y * m.y;
    const double predicted = (q / std::tanh(m.r) - 2.0 * eps * m.y * std::sqrt(q)) / m.y;
    CHECK(std::abs(fd - predicted) < 1e-6 * (1.0 + std::abs(predicted)));
  }
}

TEST_CASE("properness: integrations stop only at events") {
  IntegratorConfig cfg;
  for (int i = 0; i < 60; ++i) {
    const double r0 = uniform(0.1, 5.0), th0 = uniform(-3.1, 3.1);
    IntegrationLimits lim;
    lim.r_max = 15.0;
    lim.r_axis = 1e-3;
    lim.t_span = 100.0;
    lim.stop_at_horizontal = false;
    for (int dir : {1, -1}) {
      const auto res = integrate({0.0, r0, 0.0, th0}, orientation_of(th0), cfg, dir, lim);
      const ProfileState end = res.event.state;
      switch (res.event.kind) {
        case EventKind::RMaxReached: CHECK(end.r == doctest::Approx(15.0).epsilon(1e-12)); break;
        case EventKind::AxisReached: CHECK(end.r == doctest::Approx(1e-3).epsilon(1e-9)); break;
        case EventKind::TMaxReached: CHECK(std::abs(end.t) == doctest::Approx(100.0)); break;
        default: FAIL("unexpected terminal event " << to_string(res.event.kind));
      }
    }
  }
}

TEST_CASE("gamma crossings are recorded with sharp residuals") {
  IntegratorConfig cfg;
  IntegrationLimits lim;
  lim.r_max = 6.0;
  const auto res = integrate({0.0, 1.0, 0.0, std::numbers::pi / 2}, 1, cfg, 1, lim);
  REQUIRE(res.profile.crossings().size() == 1);
  const Event& g = res.profile.crossings()[0];
  CHECK(g.kind == EventKind::GammaCrossing);
  CHECK(g.residual < cfg.event_tol);
  CHECK(g.state.r == doctest::Approx(gamma(std::cos(g.state.theta), 1)).epsilon(1e-9));
}

TEST_CASE("step budget exhaustion carries the last state") {
  IntegratorConfig cfg;
  IntegrationLimits lim;
  lim.max_steps = 3;
  try {
    integrate({0.0, 1.0, 0.0, 0.3}, 1, cfg, 1, lim);
    FAIL("expected IntegrationFailure");
  } catch (const IntegrationFailure& e) {
    CHECK(e.last_state().r > 1.0);
    CHECK(e.last_state().t > 0.0);
  }
}

TEST_CASE("short backward re-integration of the bowl returns to the series") {
  IntegratorConfig cfg;
  IntegrationLimits fwd;
  fwd.r_max = 1.0;
  const auto up = integrate(axis_start(cfg), 1, cfg, 1, fwd);
  IntegrationLimits back;
  back.r_axis = 0.01;
  const auto down = integrate(up.event.state, 1, cfg, -1, back);
  REQUIRE(down.event.kind == EventKind::AxisReached);
  const ProfileState s = down.event.state;
  CHECK(std::abs(std::tan(s.theta) - axis_series::slope(s.r)) < 1e-9);
  // Heights differ by the constant fixed at the series start.
  CHECK(std::abs(s.w - axis_series::height(s.r)) < 1e-9);
}

TEST_CASE("profile dense output and joins") {
  IntegratorConfig cfg;
  IntegrationLimits lim;
  lim.t_span = 1.0;
  const auto a = integrate({0.0, 1.0, 0.0, 0.4}, 1, cfg, 1, lim);
  CHECK(a.profile.has_dense_output());
  const auto& s = a.profile.samples();
  for (const auto& x : s) CHECK(a.profile.at(x.t).r == doctest::Approx(x.r).epsilon(1e-14));
  CHECK_THROWS_AS(a.profile.at(5.0), std::out_of_range);
  const auto b = integrate(a.event.state, 1, cfg, 1, lim);
  const auto j = a.profile.joined(b.profile, ProfileKind::Generic);
  CHECK(j.t_begin() == 0.0);
  CHECK(j.t_end() == doctest::Approx(2.0));
  CHECK_THROWS_AS(b.profile.joined(a.profile, ProfileKind::Generic), std::invalid_argument);
}

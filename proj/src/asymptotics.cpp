#include "h2r/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "h2r/config.hpp"

namespace h2r {

double phi_rhs(double r, double phi) { return (1.0 + phi * phi) * (2.0 - phi / std::tanh(r)); }

double psi_rhs(double r, double psi) {
  const double t = std::tanh(r);
  const double c = std::cosh(r);
  const double phi = 2.0 * t + psi;
  return -psi / t * (1.0 + phi * phi) - 2.0 / (c * c);
}

PhiSolution::PhiSolution(double R, double phi0, std::vector<DenseSegment<1>> segments)
    : R_(R), phi0_(phi0), segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("PhiSolution: no segments");
}

const DenseSegment<1>& PhiSolution::segment_for(double r) const {
  if (r < R_ || r > r_end()) throw std::out_of_range("PhiSolution: r=" + std::to_string(r) + " outside solution");
  auto it = std::upper_bound(segments_.begin(), segments_.end(), r,
                             [](double v, const DenseSegment<1>& s) { return v < s.t_old; });
  if (it != segments_.begin()) --it;
  return *it;
}

double PhiSolution::phi(double r) const {
  if (r == R_) return phi0_;
  return segment_for(r).eval(r)[0];
}

double PhiSolution::dphi(double r) const { return segment_for(r).derivative(r)[0]; }

double PhiSolution::psi(double r) const { return phi(r) - 2.0 * std::tanh(r); }

std::vector<double> PhiSolution::nodes() const {
  std::vector<double> out{R_};
  for (const auto& s : segments_) out.push_back(s.t_new);
  return out;
}

PhiSolution solve_phi(double R, double phi0, double r_end, const IntegratorConfig& cfg) {
  cfg.validate();
  if (!(R > 0.0)) throw std::domain_error("solve_phi: R must be positive");
  if (!(phi0 > 0.0)) throw std::domain_error("solve_phi: phi0 must be positive");
  if (!(r_end > R)) throw std::domain_error("solve_phi: r_end must exceed R");
  if (r_end > default_tolerances().max_hyperbolic_radius) throw std::domain_error("solve_phi: r_end too large");

  constexpr double kBlowUp = 1e8;
  typename Dop853<1>::Options opt;
  opt.abs_tol = cfg.abs_tol;
  opt.rel_tol = cfg.rel_tol;
  opt.max_step = cfg.max_step;
  Dop853<1> stepper([](double r, const Vec<1>& p) { return Vec<1>{phi_rhs(r, p[0])}; }, R, Vec<1>{phi0}, 1, opt);

  std::vector<DenseSegment<1>> segs;
  while (segs.empty() || segs.back().t_new < r_end) {
    try {
      segs.push_back(stepper.step(r_end));
    } catch (const StepSizeUnderflow& e) {
      throw IntegrationFailure(std::string("solve_phi: blow-up, ") + e.what(), ProfileState{stepper.t(), stepper.t()});
    }
    const double p = segs.back().y_new[0];
    if (!(std::abs(p) < kBlowUp)) {
      throw IntegrationFailure("solve_phi: blow-up at r=" + std::to_string(stepper.t()),
                               ProfileState{stepper.t(), stepper.t()});
    }
    if (segs.size() > 5'000'000) throw IntegrationFailure("solve_phi: step budget exhausted", {});
  }
  return PhiSolution(R, phi0, std::move(segs));
}

double psi_lower_bound(double r) {
  const double t = std::tanh(r);
  const double c = std::cosh(r);
  return 2.0 * t / (c * c * (1.0 + 4.0 * t * t));
}

double psi_upper_bound(double r, double eps0) {
  const double t = std::tanh(r);
  const double c = std::cosh(r);
  const double q = 1.0 + (2.0 * t - eps0) * (2.0 * t - eps0);
  return 2.0 * t / (c * c * q) + eps0 * t / q;
}

namespace {

// log cosh r without overflow: r + log1p(e^{-2r}) - log 2.
double log_cosh(double r) {
  const double a = std::abs(r);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double sech2(double r) {
  const double c = std::cosh(r);
  return std::isfinite(c) ? 1.0 / (c * c) : 0.0;
}

}  // namespace

double model_log_term(double r) { return -std::log(10.0 - 8.0 * sech2(r)); }

double model_f(double r) { return 2.0 * log_cosh(r) + 0.25 * model_log_term(r); }

double model_psi(double r) {
  // 5 cosh 2r - 3 = 10 cosh^2 r - 8, so psi = -4 tanh r sech^2 r / (10 - 8 sech^2 r).
  const double s = sech2(r);
  return -4.0 * std::tanh(r) * s / (10.0 - 8.0 * s);
}

double model_phi(double r) { return 2.0 * std::tanh(r) + model_psi(r); }

double model_offset_limit() { return -2.0 * std::numbers::ln2 - 0.25 * std::numbers::ln10; }

AsymptoticOffset asymptotic_offset(const std::function<double(double)>& f, double a, double b, int n) {
  if (!(b > a) || n < 2) throw std::invalid_argument("asymptotic_offset: need a < b and n >= 2");
  AsymptoticOffset out;
  out.a = a;
  out.b = b;
  out.unresolved = a < default_tolerances().asymptotic_window_min;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = a + (b - a) * i / (n - 1);
    const double d = f(r) - 2.0 * r;
    sum += d;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  out.k = sum / n;
  out.variation = hi - lo;
  return out;
}

double measured_threshold(const std::function<bool(double)>& holds, double a, double b, int n) {
  if (!(b > a) || n < 2) throw std::invalid_argument("measured_threshold: need a < b and n >= 2");
  double threshold = std::numeric_limits<double>::quiet_NaN();
  for (int i = n - 1; i >= 0; --i) {
    const double r = a + (b - a) * i / (n - 1);
    if (!holds(r)) break;
    threshold = r;
  }
  return threshold;
}

std::vector<AsymptoticRow> asymptotic_table(const PhiSolution& sol, double eps0, int n) {
  if (n < 2) throw std::invalid_argument("asymptotic_table: n must be at least 2");
  std::vector<AsymptoticRow> rows;
  rows.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double r = sol.R() + (sol.r_end() - sol.R()) * i / (n - 1);
    rows.push_back({r, sol.phi(r), sol.psi(r), psi_lower_bound(r), psi_upper_bound(r, eps0), model_psi(r)});
  }
  return rows;
}

}  // namespace h2r

#pragma once

// Adaptive explicit Runge-Kutta integrator of order 8 (DOP853) with the
// 7th-order continuous extension. Header-only, fixed-size state.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "h2r/detail/dop853_tableau.hpp"

namespace h2r {

template <std::size_t N>
using Vec = std::array<double, N>;

/// Thrown when the controller cannot find an acceptable step.
class StepSizeUnderflow : public std::runtime_error {
 public:
  StepSizeUnderflow(double t, const std::string& state)
      : std::runtime_error("step size underflow at t=" + std::to_string(t) + " state=" + state),
        t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

/// Interpolant valid on one accepted step [t_old, t_new] (either orientation).
template <std::size_t N>
struct DenseSegment {
  double t_old = 0.0;
  double t_new = 0.0;
  Vec<N> y_old{};
  Vec<N> y_new{};
  std::array<Vec<N>, 7> F{};

  double h() const { return t_new - t_old; }
  double t_min() const { return std::min(t_old, t_new); }
  double t_max() const { return std::max(t_old, t_new); }
  bool contains(double t) const { return t >= t_min() && t <= t_max(); }

  Vec<N> eval(double t) const {
    Vec<N> y{};
    eval_with_derivative(t, &y, nullptr);
    return y;
  }

  Vec<N> derivative(double t) const {
    Vec<N> y{}, dy{};
    eval_with_derivative(t, &y, &dy);
    return dy;
  }

  void eval_with_derivative(double t, Vec<N>* y, Vec<N>* dy) const {
    const double x = (t - t_old) / h();
    for (std::size_t c = 0; c < N; ++c) {
      double v = 0.0, dv = 0.0;
      // Nested form y_old + x(F0 + (1-x)(F1 + x(F2 + ...))).
      for (int k = 6; k >= 0; --k) {
        const bool times_x = ((6 - k) % 2) == 0;
        const double m = times_x ? x : 1.0 - x;
        const double dm = times_x ? 1.0 : -1.0;
        const double s = v + F[k][c];
        dv = dv * m + s * dm;
        v = s * m;
      }
      if (y) (*y)[c] = y_old[c] + v;
      if (dy) (*dy)[c] = dv / h();
    }
  }
};

template <std::size_t N>
class Dop853 {
 public:
  using Rhs = std::function<Vec<N>(double, const Vec<N>&)>;

  struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double max_step = std::numeric_limits<double>::infinity();
    double first_step = 0.0;  // 0 selects automatically
  };

  Dop853(Rhs rhs, double t0, const Vec<N>& y0, int direction, Options opt)
      : rhs_(std::move(rhs)), t_(t0), y_(y0), direction_(direction >= 0 ? 1 : -1), opt_(opt) {
    if (!(opt_.abs_tol > 0.0) || !(opt_.rel_tol > 0.0) || !(opt_.max_step > 0.0)) {
      throw std::invalid_argument("Dop853: tolerances and max_step must be positive");
    }
    f_ = rhs_(t_, y_);
    if (!finite(f_)) throw std::domain_error("Dop853: right-hand side not finite at start");
    h_abs_ = opt_.first_step > 0.0 ? opt_.first_step : initial_step();
  }

  double t() const { return t_; }
  const Vec<N>& y() const { return y_; }
  const Vec<N>& f() const { return f_; }
  int direction() const { return direction_; }
  long evaluations() const { return nfev_; }

  /// Take one accepted step, never passing t_bound, and return its interpolant.
  DenseSegment<N> step(double t_bound = std::numeric_limits<double>::quiet_NaN()) {
    namespace tab = detail::dop853;
    constexpr double kSafety = 0.9, kMinFactor = 0.2, kMaxFactor = 10.0;
    constexpr double kExponent = -1.0 / 8.0;

    const double min_step = 10.0 * std::abs(std::nextafter(t_, direction_ * INFINITY) - t_);
    double h_abs = std::clamp(h_abs_, min_step, opt_.max_step);
    bool rejected = false;

    std::array<Vec<N>, tab::kStagesExtended> K{};
    Vec<N> y_new{}, f_new{};
    double h = 0.0;

    for (;;) {
      if (h_abs < min_step) throw StepSizeUnderflow(t_, describe(y_));
      h = h_abs * direction_;
      double t_new = t_ + h;
      if (std::isfinite(t_bound) && direction_ * (t_new - t_bound) > 0) {
        t_new = t_bound;
        h = t_new - t_;
        h_abs = std::abs(h);
      }

      K[0] = f_;
      for (int s = 1; s < tab::kStages; ++s) {
        K[s] = rhs_(t_ + tab::C[s] * h, combine(K, s, tab::A[s], h));
        ++nfev_;
      }
      for (std::size_t c = 0; c < N; ++c) {
        double acc = 0.0;
        for (int s = 0; s < tab::kStages; ++s) acc += tab::B[s] * K[s][c];
        y_new[c] = y_[c] + h * acc;
      }
      f_new = finite(y_new) ? rhs_(t_ + h, y_new) : y_new;
      ++nfev_;
      K[tab::kStages] = f_new;

      double err = error_norm(K, h, y_new);
      if (!std::isfinite(err) || !finite(f_new)) err = std::numeric_limits<double>::infinity();

      if (err < 1.0) {
        double factor = err == 0.0 ? kMaxFactor : std::min(kMaxFactor, kSafety * std::pow(err, kExponent));
        if (rejected) factor = std::min(1.0, factor);
        h_abs_ = h_abs * factor;
        break;
      }
      const double shrink = std::isfinite(err) ? std::max(kMinFactor, kSafety * std::pow(err, kExponent)) : 0.25;
      h_abs *= shrink;
      rejected = true;
    }

    // Extra stages for the continuous extension.
    for (int s = tab::kStages + 1; s < tab::kStagesExtended; ++s) {
      K[s] = rhs_(t_ + tab::C[s] * h, combine(K, s, tab::A[s], h));
      ++nfev_;
    }

    DenseSegment<N> seg;
    seg.t_old = t_;
    seg.t_new = t_ + h;
    seg.y_old = y_;
    seg.y_new = y_new;
    for (std::size_t c = 0; c < N; ++c) {
      const double dy = y_new[c] - y_[c];
      seg.F[0][c] = dy;
      seg.F[1][c] = h * f_[c] - dy;
      seg.F[2][c] = 2.0 * dy - h * (f_new[c] + f_[c]);
      for (int r = 0; r < 4; ++r) {
        double acc = 0.0;
        for (int s = 0; s < tab::kStagesExtended; ++s) acc += tab::D[r][s] * K[s][c];
        seg.F[3 + r][c] = h * acc;
      }
    }

    t_ = seg.t_new;
    y_ = y_new;
    f_ = f_new;
    return seg;
  }

 private:
  static bool finite(const Vec<N>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  }

  static std::string describe(const Vec<N>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < N; ++i) out += (i ? ", " : "") + std::to_string(v[i]);
    return out + ")";
  }

  template <std::size_t S>
  Vec<N> combine(const std::array<Vec<N>, S>& K, int s, const double* a, double h) const {
    Vec<N> out = y_;
    for (std::size_t c = 0; c < N; ++c) {
      double acc = 0.0;
      for (int j = 0; j < s; ++j) acc += a[j] * K[j][c];
      out[c] += h * acc;
    }
    return out;
  }

  template <std::size_t S>
  double error_norm(const std::array<Vec<N>, S>& K, double h, const Vec<N>& y_new) const {
    namespace tab = detail::dop853;
    double e5 = 0.0, e3 = 0.0;
    for (std::size_t c = 0; c < N; ++c) {
      const double scale = opt_.abs_tol + opt_.rel_tol * std::max(std::abs(y_[c]), std::abs(y_new[c]));
      double a5 = 0.0, a3 = 0.0;
      for (int s = 0; s <= tab::kStages; ++s) {
        a5 += tab::E5[s] * K[s][c];
        a3 += tab::E3[s] * K[s][c];
      }
      e5 += (a5 / scale) * (a5 / scale);
      e3 += (a3 / scale) * (a3 / scale);
    }
    if (e5 == 0.0 && e3 == 0.0) return 0.0;
    return std::abs(h) * e5 / std::sqrt((e5 + 0.01 * e3) * static_cast<double>(N));
  }

  // Hairer's starting step heuristic.
  double initial_step() {
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t c = 0; c < N; ++c) {
      const double sc = opt_.abs_tol + opt_.rel_tol * std::abs(y_[c]);
      d0 += (y_[c] / sc) * (y_[c] / sc);
      d1 += (f_[c] / sc) * (f_[c] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1 = std::sqrt(d1 / N);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, opt_.max_step);
    Vec<N> y1 = y_;
    for (std::size_t c = 0; c < N; ++c) y1[c] += direction_ * h0 * f_[c];
    const Vec<N> f1 = rhs_(t_ + direction_ * h0, y1);
    ++nfev_;
    double d2 = 0.0;
    for (std::size_t c = 0; c < N; ++c) {
      const double sc = opt_.abs_tol + opt_.rel_tol * std::abs(y_[c]);
      d2 += ((f1[c] - f_[c]) / sc) * ((f1[c] - f_[c]) / sc);
    }
    d2 = std::isfinite(d2) ? std::sqrt(d2 / N) / h0 : 1e30;
    const double h1 = (d1 <= 1e-15 && d2 <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                                   : std::pow(0.01 / std::max(d1, d2), 1.0 / 8.0);
    return std::min({100.0 * h0, h1, opt_.max_step});
  }

  Rhs rhs_;
  double t_;
  Vec<N> y_;
  Vec<N> f_{};
  int direction_;
  Options opt_;
  double h_abs_ = 0.0;
  long nfev_ = 1;
};

}  // namespace h2r

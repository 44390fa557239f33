#pragma once

// Embedded Dormand-Prince 5(4) pair with PI-free standard step control.
// Small fixed-size states only; every solver in this library integrates
// through this one implementation so tolerances mean the same thing
// everywhere.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "remo/errors.hpp"

namespace remo {

struct OdeOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double initial_step = 0.0;  // 0 = choose automatically
  std::size_t max_steps = 1'000'000;
};

namespace dp45 {

// Butcher tableau of the Dormand-Prince 5(4) pair.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights (error estimator).
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace dp45

// Integrates y' = f(t, y) from t0 to t1 in place. RHS signature:
//   void f(double t, const std::array<double, N>& y, std::array<double, N>& dydt)
// Throws IntegratorFailure on non-finite states or an exhausted step budget.
template <std::size_t N, class RHS>
void integrate_dp45(RHS&& f, double t0, double t1, std::array<double, N>& y,
                    const OdeOptions& opt = {}) {
  using State = std::array<double, N>;
  if (!(t1 >= t0)) throw IntegratorFailure("integrate_dp45: t1 < t0");
  if (t1 == t0) return;

  const double span = t1 - t0;
  State k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;

  auto finite = [](const State& v) {
    for (double x : v)
      if (!std::isfinite(x)) return false;
    return true;
  };

  double t = t0;
  f(t, y, k1);
  if (!finite(k1) || !finite(y)) throw IntegratorFailure("integrate_dp45: non-finite initial data");

  double h = opt.initial_step;
  if (h <= 0.0) {
    // Scale the first trial step to the initial derivative magnitude.
    double ynorm = 0.0, fnorm = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      ynorm = std::max(ynorm, std::abs(y[i]));
      fnorm = std::max(fnorm, std::abs(k1[i]));
    }
    h = (fnorm > 0.0) ? 0.01 * std::max(ynorm, 1.0) / fnorm : 0.1 * span;
    h = std::min(h, span);
  }

  const double hmin = span * 1e-14;
  bool fsal_valid = true;  // k1 holds f(t, y)
  std::size_t steps = 0;

  while (t < t1) {
    if (++steps > opt.max_steps)
      throw IntegratorFailure("integrate_dp45: step budget exhausted at t = " + std::to_string(t));
    bool clipped = false;
    if (t + h >= t1) {
      h = t1 - t;
      clipped = true;
    }
    if (!fsal_valid) f(t, y, k1);

    using namespace dp45;
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    f(t + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    f(t + h, ytmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    f(t + h, ynew, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                             e7 * k7[i]);
      const double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (ei / sc) * (ei / sc);
    }
    err = std::sqrt(err / static_cast<double>(N));

    if (!finite(ynew) || !std::isfinite(err)) {
      h *= 0.25;
      fsal_valid = false;
      if (h < hmin) throw IntegratorFailure("integrate_dp45: solution became non-finite");
      continue;
    }

    if (err <= 1.0) {
      t = clipped ? t1 : t + h;
      y = ynew;
      k1 = k7;  // FSAL
      fsal_valid = true;
      double fac = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
      h *= std::clamp(fac, 0.2, 5.0);
    } else {
      double fac = 0.9 * std::pow(err, -0.2);
      h *= std::clamp(fac, 0.2, 0.9);
      fsal_valid = true;  // y unchanged, k1 still valid
      if (h < hmin) throw IntegratorFailure("integrate_dp45: step size underflow");
    }
  }
}

}  // namespace remo

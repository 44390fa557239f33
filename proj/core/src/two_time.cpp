#include "remo/two_time.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>

#include "remo/errors.hpp"
#include "remo/ode.hpp"

namespace remo {

const char* to_string(FieldMethod m) {
  return m == FieldMethod::Integral ? "integral" : "ode";
}

namespace {

constexpr double kG3[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr double kW3[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

// Cubic Lagrange interpolation through the four grid nodes around tt
// (quadratic/linear near the edges). Grid values are a contiguous row.
double cubic_interp(std::span<const double> t, std::span<const double> v, double tt) {
  const std::size_t n = t.size();
  if (n < 2) return v.front();
  auto it = std::upper_bound(t.begin(), t.end(), tt);
  std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - t.begin() - 1, 0));
  k = std::min(k, n - 2);
  const std::size_t count = std::min<std::size_t>(4, n);
  std::size_t first = 0;
  if (n >= 4) {
    first = (k == 0) ? 0 : k - 1;
    if (first + 4 > n) first = n - 4;
  }
  double result = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    double li = 1.0;
    for (std::size_t j = 0; j < count; ++j) {
      if (i == j) continue;
      li *= (tt - t[first + j]) / (t[first + i] - t[first + j]);
    }
    result += li * v[first + i];
  }
  return result;
}

}  // namespace

double initial_cross_section(const DiagonalTrajectory& traj, const InitialMoments& init,
                             double s) {
  const double span = traj.t_end() - traj.t0();
  const double slack = 1e-12 * (std::max(1.0, std::abs(traj.t_end())) + span);
  if (s < traj.t0() - slack || s > traj.t_end() + slack)
    throw HistoryTooShort("initial_cross_section: s = " + std::to_string(s) +
                          " outside recorded history");
  s = std::clamp(s, traj.t0(), traj.t_end());
  return init.c_x0x0 * std::exp(traj.drift().ia_at(s));
}

Matrix cross_covariance_field(const DiagonalTrajectory& traj, const Kernel& kernel,
                              const OscillatorParams& params, FieldMethod method,
                              const SolverConfig& cfg) {
  const std::size_t n = traj.times.size();
  const auto& t = traj.times;
  const PiecewiseDrift drift = traj.drift();
  const double b_y = coefficients(params, kernel, 0.0, 0.0).b_y;
  Matrix out(n, n, 0.0);  // row t0 is identically zero

  if (method == FieldMethod::Integral) {
    // March in t per column with the incremental update
    //   Q(t_{k+1}) = E(t_{k+1}, t_k) Q(t_k) + panel integral.
    for (std::size_t j = 0; j < n; ++j) {
      const double s = t[j];
      double q = 0.0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const double lo = t[k], hi = t[k + 1];
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        const double ia_hi = traj.ia[k + 1];
        double panel = 0.0;
        for (int g = 0; g < 3; ++g) {
          const double tau = mid + half * kG3[g];
          panel += kW3[g] * kernel.covariance(tau - s) *
                   std::exp(ia_hi - drift.ia_in_segment(k, tau));
        }
        q = std::exp(ia_hi - traj.ia[k]) * q + b_y * half * panel;
        out(k + 1, j) = q;
      }
    }
    return out;
  }

  // Ode route: for each s, integrate dC/dt = A_x(t) C + B_y C_yy(t - s).
  const OdeOptions opt{cfg.ode_rel_tol, cfg.ode_abs_tol};
  for (std::size_t j = 0; j < n; ++j) {
    const double s = t[j];
    std::array<double, 1> y{0.0};
    auto rhs = [&](double tt, const std::array<double, 1>& c, std::array<double, 1>& dc) {
      dc[0] = drift.a_at(tt) * c[0] + b_y * kernel.covariance(tt - s);
    };
    for (std::size_t k = 0; k + 1 < n; ++k) {
      integrate_dp45<1>(rhs, t[k], t[k + 1], y, opt);
      out(k + 1, j) = y[0];
    }
  }
  return out;
}

Matrix auto_covariance_field(const DiagonalTrajectory& traj, const Matrix& cxy,
                             const Kernel& kernel, const OscillatorParams& params,
                             const InitialMoments& init, FieldMethod method,
                             const SolverConfig& cfg) {
  const std::size_t n = traj.times.size();
  if (cxy.rows() != n || cxy.cols() != n)
    throw GridMismatch("auto_covariance_field: cxy grid does not match the trajectory grid");
  const auto& t = traj.times;
  const PiecewiseDrift drift = traj.drift();
  const double b_y = coefficients(params, kernel, 0.0, 0.0).b_y;
  Matrix out(n, n, 0.0);

  // Row s of cxy as a function of its column (excitation) time.
  auto row_span = [&](std::size_t j) {
    return std::span<const double>(cxy.data().data() + j * n, n);
  };

  if (method == FieldMethod::Integral) {
    for (std::size_t j = 0; j < n; ++j) {
      const double init_section = init.c_x0x0 * std::exp(traj.ia[j]);  // C_x0x(s_j)
      out(0, j) = init_section;
      const auto row = row_span(j);
      double q = 0.0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const double lo = t[k], hi = t[k + 1];
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        const double ia_hi = traj.ia[k + 1];
        double panel = 0.0;
        for (int g = 0; g < 3; ++g) {
          const double tau = mid + half * kG3[g];
          panel += kW3[g] * cubic_interp(t, row, tau) *
                   std::exp(ia_hi - drift.ia_in_segment(k, tau));
        }
        q = std::exp(ia_hi - traj.ia[k]) * q + b_y * half * panel;
        out(k + 1, j) = init_section * std::exp(traj.ia[k + 1]) + q;
      }
    }
  } else {
    const OdeOptions opt{cfg.ode_rel_tol, cfg.ode_abs_tol};
    for (std::size_t j = 0; j < n; ++j) {
      const auto row = row_span(j);
      std::array<double, 1> y{init.c_x0x0 * std::exp(traj.ia[j])};
      out(0, j) = y[0];
      auto rhs = [&](double tt, const std::array<double, 1>& c, std::array<double, 1>& dc) {
        dc[0] = drift.a_at(tt) * c[0] + b_y * cubic_interp(t, row, tt);
      };
      for (std::size_t k = 0; k + 1 < n; ++k) {
        integrate_dp45<1>(rhs, t[k], t[k + 1], y, opt);
        out(k + 1, j) = y[0];
      }
    }
  }

  // Keep the lower triangle t >= s, mirror onto the upper one.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out(i, j) = out(j, i);
  return out;
}

TwoTimeField build_two_time_field(const DiagonalTrajectory& traj, const Kernel& kernel,
                                  const OscillatorParams& params, const InitialMoments& init,
                                  FieldMethod method, const SolverConfig& cfg) {
  TwoTimeField f;
  f.times = traj.times;
  f.method = method;
  f.c_xy = cross_covariance_field(traj, kernel, params, method, cfg);
  f.c_xx = auto_covariance_field(traj, f.c_xy, kernel, params, init, method, cfg);
  f.c_x0x.resize(traj.times.size());
  for (std::size_t j = 0; j < traj.times.size(); ++j)
    f.c_x0x[j] = init.c_x0x0 * std::exp(traj.ia[j]);
  return f;
}

}  // namespace remo

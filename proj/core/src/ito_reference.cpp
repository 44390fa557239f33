#include "remo/ito_reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "remo/errors.hpp"
#include "remo/ode.hpp"

namespace remo {

LocalTrajectory solve_ou_local(const OscillatorParams& params, const Kernel& kernel,
                               const InitialMoments& init, double t_end, const SolverConfig& cfg,
                               double t0, std::span<const double> output_times) {
  params.validate();
  init.validate();
  cfg.validate();
  if (kernel.family() != KernelFamily::OU || kernel.mean() != 0.0)
    throw NotLocalizable(
        "solve_ou_local: the localized moment system exists only for a centered OU input");
  const Stability stab = classify_potential(params);
  if (stab != Stability::Monostable && stab != Stability::Linear)
    throw InvalidParameter("oscillator", "solve_ou_local requires monostable or linear params");

  const double a = kernel.a();
  const double s2 = kernel.sigma2();
  const double b_y = coefficients(params, kernel, 0.0, 0.0).b_y;
  const double mu1 = params.mu1, mu3 = params.mu3;

  LocalTrajectory out;
  out.noise_intensity = 2.0 * a * s2;
  if (output_times.empty()) {
    const std::size_t n = 512;
    out.times.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
      out.times[k] = t0 + (t_end - t0) * static_cast<double>(k) / static_cast<double>(n);
  } else {
    if (output_times.front() != t0 || output_times.back() > t_end + 1e-12)
      throw IntervalMismatch("solve_ou_local: output grid outside [t0, t_end]");
    out.times.assign(output_times.begin(), output_times.end());
  }

  auto rhs = [&](double, const std::array<double, 3>& y, std::array<double, 3>& dy) {
    const double m = y[0], cxy = y[1], cxx = y[2];
    const double ax = mu1 + 3.0 * mu3 * (m * m + cxx);
    dy[0] = (mu1 + mu3 * m * m + 3.0 * mu3 * cxx) * m;
    dy[1] = (ax - a) * cxy + b_y * s2;
    dy[2] = 2.0 * ax * cxx + 2.0 * b_y * cxy;
  };

  std::array<double, 3> y{init.m_x0, 0.0, init.c_x0x0};
  const OdeOptions opt{cfg.ode_rel_tol, cfg.ode_abs_tol};
  out.m_x.reserve(out.times.size());
  out.c_xy_diag.reserve(out.times.size());
  out.c_xx_diag.reserve(out.times.size());
  out.m_x.push_back(y[0]);
  out.c_xy_diag.push_back(y[1]);
  out.c_xx_diag.push_back(y[2]);
  for (std::size_t k = 1; k < out.times.size(); ++k) {
    integrate_dp45<3>(rhs, out.times[k - 1], out.times[k], y, opt);
    out.m_x.push_back(y[0]);
    out.c_xy_diag.push_back(y[1]);
    out.c_xx_diag.push_back(y[2]);
  }
  return out;
}

namespace {

double interp(const std::vector<double>& t, const std::vector<double>& v, double tt) {
  const auto it = std::upper_bound(t.begin(), t.end(), tt);
  std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - t.begin() - 1, 0));
  k = std::min(k, t.size() - 2);
  const double w = (tt - t[k]) / (t[k + 1] - t[k]);
  return v[k] + w * (v[k + 1] - v[k]);
}

}  // namespace

ResidualReport localization_residual(const DiagonalTrajectory& causal,
                                     const LocalTrajectory& local) {
  const double tol = 1e-9 * std::max(1.0, std::abs(causal.t_end()));
  if (std::abs(causal.t0() - local.times.front()) > tol ||
      std::abs(causal.t_end() - local.times.back()) > tol)
    throw IntervalMismatch("localization_residual: trajectories span different intervals");

  ResidualReport r;
  for (std::size_t k = 0; k < causal.times.size(); ++k) {
    const double tt = std::clamp(causal.times[k], local.times.front(), local.times.back());
    r.max_abs_m_x = std::max(r.max_abs_m_x,
                             std::abs(causal.m_x[k] - interp(local.times, local.m_x, tt)));
    r.max_abs_c_xy = std::max(
        r.max_abs_c_xy, std::abs(causal.c_xy_diag[k] - interp(local.times, local.c_xy_diag, tt)));
    r.max_abs_c_xx = std::max(
        r.max_abs_c_xx, std::abs(causal.c_xx_diag[k] - interp(local.times, local.c_xx_diag, tt)));
  }
  return r;
}

}  // namespace remo

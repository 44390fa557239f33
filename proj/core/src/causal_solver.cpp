#include "remo/causal_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "remo/errors.hpp"
#include "remo/ode.hpp"

namespace remo {

void GridSpec::validate() const {
  if (!std::isfinite(t0) || !std::isfinite(t_end) || t_end <= t0)
    throw InvalidParameter("grid", "need finite t0 < t_end");
  if (!std::isfinite(coarse_step) || coarse_step <= 0.0)
    throw InvalidParameter("grid.coarse_step", "must be finite and > 0");
  if (fine_per_coarse < 2) throw InvalidParameter("grid.fine_per_coarse", "must be >= 2");
}

std::size_t GridSpec::coarse_steps() const {
  return static_cast<std::size_t>(std::ceil((t_end - t0) / coarse_step - 1e-12));
}

void SolverConfig::validate() const {
  if (!(eps1 > 0.0) || !(eps2 > 0.0))
    throw InvalidParameter("solver.eps", "tolerances must be > 0");
  if (max_cycles < 1) throw InvalidParameter("solver.max_cycles", "must be >= 1");
  if (!(ode_rel_tol > 0.0) || !(ode_abs_tol > 0.0))
    throw InvalidParameter("solver.ode_tol", "integrator tolerances must be > 0");
}

bool cycle_converged(const FinePair& prev, const FinePair& curr, const SolverConfig& cfg) {
  if (prev.m_x.size() != curr.m_x.size() || prev.c_xx.size() != curr.c_xx.size() ||
      prev.m_x.size() != prev.c_xx.size())
    throw GridMismatch("cycle_converged: histories on different fine grids");
  double dm = 0.0, dc = 0.0;
  for (std::size_t j = 0; j < prev.m_x.size(); ++j) {
    dm = std::max(dm, std::abs(prev.m_x[j] - curr.m_x[j]));
    dc = std::max(dc, std::abs(prev.c_xx[j] - curr.c_xx[j]));
  }
  return dm < cfg.eps1 && dc < cfg.eps2;
}

namespace detail {

namespace {
// 3-point Gauss-Legendre on [-1, 1].
constexpr double kG3[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr double kW3[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
}  // namespace

double causal_integral(const PiecewiseDrift& drift, const Kernel& kernel, double b_y, double t,
                       double ia_t) {
  const std::size_t n = drift.t.size();
  if (n < 2 || t <= drift.t.front()) return 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double lo = drift.t[k];
    const double hi = std::min(drift.t[k + 1], t);
    if (hi <= lo) break;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double panel = 0.0;
    for (int g = 0; g < 3; ++g) {
      const double tau = mid + half * kG3[g];
      panel += kW3[g] * kernel.covariance(t - tau) *
               std::exp(ia_t - drift.ia_in_segment(k, tau));
    }
    total += half * panel;
    if (drift.t[k + 1] >= t) break;
  }
  return b_y * total;
}

double causal_integral(const PiecewiseDrift& drift, const Kernel& kernel, double b_y, double t) {
  return causal_integral(drift, kernel, b_y, t, drift.ia_at(t));
}

}  // namespace detail

namespace {

// Cubic through a panel's values at x = 0, 1/3, 2/3, 1 (Lagrange form).
struct PanelCubic {
  double lo, inv_h;
  double v0, v1, v2, v3;
  double operator()(double t) const {
    const double x = (t - lo) * inv_h;
    return v0 * -4.5 * (x - 1.0 / 3.0) * (x - 2.0 / 3.0) * (x - 1.0) +
           v1 * 13.5 * x * (x - 2.0 / 3.0) * (x - 1.0) +
           v2 * -13.5 * x * (x - 1.0 / 3.0) * (x - 1.0) +
           v3 * 4.5 * x * (x - 1.0 / 3.0) * (x - 2.0 / 3.0);
  }
};

}  // namespace

DiagonalTrajectory solve_diagonal(const OscillatorParams& params, const Kernel& kernel,
                                  const InitialMoments& init, const GridSpec& grid,
                                  const SolverConfig& cfg) {
  params.validate();
  init.validate();
  grid.validate();
  cfg.validate();
  const Stability stab = classify_potential(params);
  if (stab != Stability::Monostable && stab != Stability::Linear)
    throw InvalidParameter("oscillator",
                           std::string("solve_diagonal requires a monostable or linear "
                                       "configuration, got ") +
                               to_string(stab));

  const CoefficientSet coeff0 = coefficients(params, kernel, init.m_x0, init.c_x0x0);
  const double b_y = coeff0.b_y;
  const double b_ty = coeff0.b_tilde_y;
  const double m_y = kernel.mean();
  const double mu1 = params.mu1, mu3 = params.mu3;
  auto a_of = [mu1, mu3](double m, double c) { return mu1 + 3.0 * mu3 * (m * m + c); };

  const double neg_floor =
      1e-9 * std::max({1.0, init.c_x0x0, kernel.sigma2()});

  DiagonalTrajectory traj;
  traj.times = {grid.t0};
  traj.m_x = {init.m_x0};
  traj.c_xx_diag = {init.c_x0x0};
  traj.a_x = {coeff0.a_x};
  traj.ia = {0.0};
  traj.node_step = {0};

  const std::size_t n_steps = grid.coarse_steps();
  const int J = grid.fine_per_coarse;
  const OdeOptions ode_opt{cfg.ode_rel_tol, cfg.ode_abs_tol};

  std::vector<double> ext_t, ext_a, ext_ia;  // committed history + current-step prediction

  for (std::size_t step = 0; step < n_steps; ++step) {
    const double ta = traj.times.back();
    const double tb = std::min(grid.t0 + static_cast<double>(step + 1) * grid.coarse_step,
                               grid.t_end);
    std::vector<double> fine(static_cast<std::size_t>(J) + 1);
    for (int j = 0; j <= J; ++j)
      fine[static_cast<std::size_t>(j)] = ta + (tb - ta) * static_cast<double>(j) / J;

    // Predicted A_x at the new fine nodes.
    std::vector<double> pa(fine.size());
    pa[0] = traj.a_x.back();
    if (step == 0) {
      std::fill(pa.begin(), pa.end(), traj.a_x.front());
    } else {
      const std::size_t n = traj.times.size();
      const double slope = (traj.a_x[n - 1] - traj.a_x[n - 2]) /
                           (traj.times[n - 1] - traj.times[n - 2]);
      for (std::size_t j = 1; j < fine.size(); ++j)
        pa[j] = traj.a_x[n - 1] + slope * (fine[j] - traj.times[n - 1]);
    }

    FinePair prev, curr;
    curr.m_x.resize(static_cast<std::size_t>(J));
    curr.c_xx.resize(static_cast<std::size_t>(J));
    // I_A accumulated as an integrated state alongside (m, C): the
    // committed node values then carry the integrator's accuracy instead of
    // the trapezoid error of the piecewise-linear drift, which the fast
    // initial transient would otherwise imprint on every exponential weight.
    std::vector<double> cur_ia(static_cast<std::size_t>(J));
    int used_cycles = -1;

    for (int cycle = 0; cycle <= cfg.max_cycles; ++cycle) {
      // Extended drift representation: committed nodes + predicted fine nodes.
      ext_t.assign(traj.times.begin(), traj.times.end());
      ext_a.assign(traj.a_x.begin(), traj.a_x.end());
      ext_ia.assign(traj.ia.begin(), traj.ia.end());
      for (std::size_t j = 1; j < fine.size(); ++j) {
        ext_t.push_back(fine[j]);
        ext_a.push_back(pa[j]);
        const double h = ext_t[ext_t.size() - 1] - ext_t[ext_t.size() - 2];
        ext_ia.push_back(ext_ia.back() + 0.5 * (ext_a[ext_a.size() - 2] + ext_a.back()) * h);
      }
      const PiecewiseDrift drift{ext_t, ext_a, ext_ia};

      double m = traj.m_x.back();
      double c = traj.c_xx_diag.back();
      double ia_run = traj.ia.back();
      for (int j = 0; j < J; ++j) {
        const double lo = fine[static_cast<std::size_t>(j)];
        const double hi = fine[static_cast<std::size_t>(j) + 1];
        // The causal term is a fixed function of time within a cycle
        // (frozen predicted A_x); a cubic panel model of it makes the inner
        // RHS local.
        const double h3 = (hi - lo) / 3.0;
        PanelCubic dq{lo, 1.0 / (hi - lo),
                      detail::causal_integral(drift, kernel, b_y, lo),
                      detail::causal_integral(drift, kernel, b_y, lo + h3),
                      detail::causal_integral(drift, kernel, b_y, lo + 2.0 * h3),
                      detail::causal_integral(drift, kernel, b_y, hi)};
        std::array<double, 3> y{m, c, ia_run};
        auto rhs = [&](double t, const std::array<double, 3>& s, std::array<double, 3>& ds) {
          const double mm = s[0], cc = s[1];
          ds[0] = (mu1 + mu3 * mm * mm + 3.0 * mu3 * cc) * mm + b_ty * m_y;
          ds[1] = 2.0 * a_of(mm, cc) * cc + 2.0 * b_y * dq(t);
          ds[2] = a_of(mm, cc);
        };
        try {
          integrate_dp45<3>(rhs, lo, hi, y, ode_opt);
        } catch (const IntegratorFailure& e) {
          throw InstabilityDetected("solve_diagonal: inner integration failed at coarse step " +
                                    std::to_string(step) + ": " + e.what());
        }
        m = y[0];
        c = y[1];
        ia_run = y[2];
        if (!std::isfinite(m) || !std::isfinite(c) || c < -neg_floor)
          throw InstabilityDetected(
              "solve_diagonal: variance became negative or non-finite at coarse step " +
              std::to_string(step));
        curr.m_x[static_cast<std::size_t>(j)] = m;
        curr.c_xx[static_cast<std::size_t>(j)] = std::max(c, 0.0);
        cur_ia[static_cast<std::size_t>(j)] = ia_run;
      }

      if (cycle > 0 && cycle_converged(prev, curr, cfg)) {
        used_cycles = cycle;
        break;
      }
      prev = curr;
      for (int j = 0; j < J; ++j)
        pa[static_cast<std::size_t>(j) + 1] =
            a_of(curr.m_x[static_cast<std::size_t>(j)], curr.c_xx[static_cast<std::size_t>(j)]);
    }

    if (used_cycles < 0)
      throw NoConvergence(step, cfg.max_cycles,
                          "solve_diagonal: correction cycles did not converge within " +
                              std::to_string(cfg.max_cycles) + " cycles at coarse step " +
                              std::to_string(step));

    for (int j = 0; j < J; ++j) {
      const double m = curr.m_x[static_cast<std::size_t>(j)];
      const double c = curr.c_xx[static_cast<std::size_t>(j)];
      traj.times.push_back(fine[static_cast<std::size_t>(j) + 1]);
      traj.m_x.push_back(m);
      traj.c_xx_diag.push_back(c);
      traj.a_x.push_back(a_of(m, c));
      traj.ia.push_back(cur_ia[static_cast<std::size_t>(j)]);
      traj.node_step.push_back(step);
    }
    traj.cycles_per_step.push_back(used_cycles);
  }

  // Diagonal cross-covariance from the committed representation.
  traj.c_xy_diag.assign(traj.times.size(), 0.0);
  const PiecewiseDrift drift = traj.drift();
  for (std::size_t k = 1; k < traj.times.size(); ++k)
    traj.c_xy_diag[k] =
        detail::causal_integral(drift, kernel, b_y, traj.times[k], traj.ia[k]);

  return traj;
}

double diagonal_cross_covariance(const DiagonalTrajectory& traj, const Kernel& kernel,
                                 const OscillatorParams& params, double t) {
  const double span = traj.t_end() - traj.t0();
  const double slack = 1e-12 * std::max(1.0, std::abs(traj.t_end())) + 1e-12 * span;
  if (t < traj.t0() - slack || t > traj.t_end() + slack)
    throw HistoryTooShort("diagonal_cross_covariance: t = " + std::to_string(t) +
                          " outside recorded history [" + std::to_string(traj.t0()) + ", " +
                          std::to_string(traj.t_end()) + "]");
  t = std::clamp(t, traj.t0(), traj.t_end());
  const double b_y = coefficients(params, kernel, 0.0, 0.0).b_y;
  return detail::causal_integral(traj.drift(), kernel, b_y, t);
}

}  // namespace remo

#pragma once

// Solver for the closed, causal one-time moment system
//
//   m'  = (mu1 + mu3 m^2 + 3 mu3 C) m + ~B_y m_y
//   C'  = 2 A_x(t) C + 2 B_y D(t),
//   D(t) = int_{t0}^t B_y C_yy(tau, t) exp(I_A(t) - I_A(tau)) dtau,
//
// by the two-scale prediction/correction scheme: per coarse step, predict
// A_x (constant at A_x(t0) on the first step, linear extrapolation of the
// last two fine values afterwards), integrate on the fine grid with the
// predicted A_x frozen inside the causal term, correct A_x through the new
// fine values and repeat until two successive cycles agree to (eps1, eps2).
// D(t) is evaluated by per-panel Gauss quadrature on the scheme's own fine
// grid using the exact running integral of the piecewise-linear A_x.

#include <span>

#include "remo/grid.hpp"
#include "remo/kernel.hpp"
#include "remo/oscillator.hpp"
#include "remo/trajectory.hpp"

namespace remo {

DiagonalTrajectory solve_diagonal(const OscillatorParams& params, const Kernel& kernel,
                                  const InitialMoments& init, const GridSpec& grid,
                                  const SolverConfig& cfg);

// Diagonal cross-covariance C_xy(t, t) evaluated from a finished (or
// partial) trajectory history. Returns 0 at t = t0; throws HistoryTooShort
// when t lies outside the recorded history.
double diagonal_cross_covariance(const DiagonalTrajectory& traj, const Kernel& kernel,
                                 const OscillatorParams& params, double t);

// One cycle's fine-grid mean/variance histories.
struct FinePair {
  std::vector<double> m_x;
  std::vector<double> c_xx;
};

// Convergence test of the correction loop: true iff
// max_j |m_prev - m_curr| < eps1 and max_j |C_prev - C_curr| < eps2.
// Throws GridMismatch when the histories differ in length.
bool cycle_converged(const FinePair& prev, const FinePair& curr, const SolverConfig& cfg);

namespace detail {

// Causal integral D(t) over the panels of a piecewise-linear drift history;
// b_y is the constant covariance forcing gain. The second overload spares
// recomputing ia_at(t).
double causal_integral(const PiecewiseDrift& drift, const Kernel& kernel, double b_y, double t);
double causal_integral(const PiecewiseDrift& drift, const Kernel& kernel, double b_y, double t,
                       double ia_t);

}  // namespace detail

}  // namespace remo

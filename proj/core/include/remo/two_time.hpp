#pragma once

// Off-diagonal two-time covariance surfaces over the rectangle
// [t0, T] x [t0, T], built from a finished diagonal trajectory. Two routes
// are provided for each surface and must agree:
//
//   Integral:  C_xy(t, s) = int_{t0}^t B_y C_yy(tau, s) E(t, tau) dtau,
//              C_xx(t, s) = C_x0x0 E(t, t0) E(s, t0)
//                           + int_{t0}^t B_y C_xy(s, tau) E(t, tau) dtau,
//              with E(t, tau) = exp(I_A(t) - I_A(tau)), evaluated by
//              per-panel Gauss quadrature with an incremental update in t;
//              the double-integral form collapses to the single integral
//              above because its inner integral is C_xy(s, tau).
//
//   Ode:       d/dt C_xy(t, s) = A_x(t) C_xy + B_y C_yy(t, s) from 0,
//              d/dt C_xx(t, s) = A_x(t) C_xx + B_y(t) C_xy(s, t) from
//              C_x0x(s), marched by the adaptive integrator.
//
// C_xx is computed on the lower triangle t >= s and mirrored.

#include <vector>

#include "remo/grid.hpp"
#include "remo/kernel.hpp"
#include "remo/matrix.hpp"
#include "remo/oscillator.hpp"
#include "remo/trajectory.hpp"

namespace remo {

enum class FieldMethod { Integral, Ode };

const char* to_string(FieldMethod m);

struct TwoTimeField {
  std::vector<double> times;   // shared axis grid (the solver's fine grid)
  Matrix c_xy;                 // C_xy(t, s): row = response time, col = excitation time
  Matrix c_xx;                 // C_xx(t, s), symmetric
  std::vector<double> c_x0x;   // C_x0x(s) along the s axis
  FieldMethod method = FieldMethod::Integral;
};

// C_x0x(s) = C_x0x0 * exp(I_A(s) - I_A(t0)). Throws HistoryTooShort when s
// lies outside the trajectory.
double initial_cross_section(const DiagonalTrajectory& traj, const InitialMoments& init,
                             double s);

Matrix cross_covariance_field(const DiagonalTrajectory& traj, const Kernel& kernel,
                              const OscillatorParams& params, FieldMethod method,
                              const SolverConfig& cfg = {});

// cxy must be the cross-covariance matrix on the same grid.
Matrix auto_covariance_field(const DiagonalTrajectory& traj, const Matrix& cxy,
                             const Kernel& kernel, const OscillatorParams& params,
                             const InitialMoments& init, FieldMethod method,
                             const SolverConfig& cfg = {});

// Builds both surfaces plus the initial cross-section in one call.
TwoTimeField build_two_time_field(const DiagonalTrajectory& traj, const Kernel& kernel,
                                  const OscillatorParams& params, const InitialMoments& init,
                                  FieldMethod method, const SolverConfig& cfg = {});

}  // namespace remo

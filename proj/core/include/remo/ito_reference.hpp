#pragma once

// Independent check: for a centered OU input the causal system localizes to
// three coupled ODEs
//
//   m'   = (mu1 + mu3 m^2 + 3 mu3 C_xx) m
//   Cxy' = (A_x - a) Cxy + B_y s2
//   Cxx' = 2 A_x C_xx + 2 B_y Cxy
//
// with implied white-noise intensity s_xi^2 = 2 a s2. Solving them with a
// stock adaptive integrator gives a reference trajectory the causal solver
// must reproduce.

#include <span>
#include <vector>

#include "remo/grid.hpp"
#include "remo/kernel.hpp"
#include "remo/oscillator.hpp"
#include "remo/trajectory.hpp"

namespace remo {

struct LocalTrajectory {
  std::vector<double> times;
  std::vector<double> m_x;
  std::vector<double> c_xy_diag;
  std::vector<double> c_xx_diag;
  double noise_intensity = 0.0;  // sigma_xi^2 = 2 a sigma_y^2
};

// Integrates the localized system up to t_end. Output is recorded at
// output_times when given (must be increasing, within [t0, t_end], with
// output_times.front() == t0), otherwise on a uniform 512-node grid.
// Throws NotLocalizable unless the kernel is a centered OU process.
LocalTrajectory solve_ou_local(const OscillatorParams& params, const Kernel& kernel,
                               const InitialMoments& init, double t_end, const SolverConfig& cfg,
                               double t0 = 0.0, std::span<const double> output_times = {});

struct ResidualReport {
  double max_abs_m_x = 0.0;
  double max_abs_c_xy = 0.0;
  double max_abs_c_xx = 0.0;
};

// Max-abs difference per moment over the causal trajectory's nodes, with the
// local trajectory resampled piecewise-linearly. Throws IntervalMismatch
// when the trajectories do not span the same interval.
ResidualReport localization_residual(const DiagonalTrajectory& causal,
                                     const LocalTrajectory& local);

}  // namespace remo

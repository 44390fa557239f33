#pragma once

// Two-scale grid description and solver tolerances.

#include <cstddef>

namespace remo {

struct GridSpec {
  double t0 = 0.0;
  double t_end = 3.0;
  double coarse_step = 1.0;  // default choice in practice: the kernel correlation time
  int fine_per_coarse = 20;  // fine subintervals J per coarse step, >= 2

  void validate() const;
  std::size_t coarse_steps() const;  // number of coarse intervals covering [t0, t_end]
};

struct SolverConfig {
  double eps1 = 1e-6;  // mean convergence tolerance
  double eps2 = 1e-6;  // variance convergence tolerance
  int max_cycles = 25;
  double ode_rel_tol = 1e-8;
  double ode_abs_tol = 1e-10;

  void validate() const;
};

}  // namespace remo

#pragma once

// Fine-grid history of the one-time (diagonal) moments together with the
// piecewise-linear drift coefficient A_x and its exact running integral
// I_A(t) = int_{t0}^t A_x(u) du, which defines the exponential weights
// exp(I_A(t) - I_A(tau)) of the causal term.

#include <cstddef>
#include <span>
#include <vector>

namespace remo {

// Drift coefficient over ordered nodes: node values a[k] = A_x(t_k) and
// node integrals ia[k] = I_A(t_k). Between nodes I_A is the C^1 cubic
// Hermite through (ia, a) - exactly the integral of the piecewise-linear
// A_x whenever ia was accumulated by its trapezoid rule - and the drift
// a_at is its derivative, so the exponential weights and the ODE
// coefficient always describe one and the same drift.
struct PiecewiseDrift {
  std::span<const double> t;
  std::span<const double> a;
  std::span<const double> ia;

  std::size_t segment(double tt) const;
  double a_at(double tt) const;
  double ia_at(double tt) const;
  double ia_in_segment(std::size_t k, double tt) const;  // k = segment(tt)
  double a_in_segment(std::size_t k, double tt) const;
};

struct DiagonalTrajectory {
  std::vector<double> times;
  std::vector<double> m_x;
  std::vector<double> c_xx_diag;
  std::vector<double> c_xy_diag;
  std::vector<double> a_x;
  std::vector<double> ia;               // I_A at the nodes, ia[0] = 0
  std::vector<int> cycles_per_step;     // correction cycles used per coarse step
  std::vector<std::size_t> node_step;   // coarse step that produced each node (node 0 -> 0)

  double t0() const { return times.front(); }
  double t_end() const { return times.back(); }
  PiecewiseDrift drift() const { return {times, a_x, ia}; }
};

}  // namespace remo

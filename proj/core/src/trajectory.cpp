#include "remo/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace remo {

std::size_t PiecewiseDrift::segment(double tt) const {
  // Largest k with t[k] <= tt, clamped to a valid segment start.
  const auto it = std::upper_bound(t.begin(), t.end(), tt);
  const std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - t.begin() - 1, 0));
  return std::min(k, t.size() >= 2 ? t.size() - 2 : std::size_t{0});
}

// I_A between nodes is the cubic Hermite through the node integrals ia[k]
// with slopes a[k]; when ia was accumulated by the trapezoid rule of a
// piecewise-linear A_x the cubic term vanishes and this is that exact
// quadratic. a_at is its derivative, so exp(I_A(t) - I_A(tau)) and the ODE
// coefficient A_x(t) always describe the same drift.

double PiecewiseDrift::ia_in_segment(std::size_t k, double tt) const {
  const double h = t[k + 1] - t[k];
  const double x = (tt - t[k]) / h;
  const double x2 = x * x, x3 = x2 * x;
  return ia[k] * (2.0 * x3 - 3.0 * x2 + 1.0) + h * a[k] * (x3 - 2.0 * x2 + x) +
         ia[k + 1] * (-2.0 * x3 + 3.0 * x2) + h * a[k + 1] * (x3 - x2);
}

double PiecewiseDrift::a_in_segment(std::size_t k, double tt) const {
  const double h = t[k + 1] - t[k];
  const double x = (tt - t[k]) / h;
  const double x2 = x * x;
  return (ia[k] * (6.0 * x2 - 6.0 * x) + ia[k + 1] * (6.0 * x - 6.0 * x2)) / h +
         a[k] * (3.0 * x2 - 4.0 * x + 1.0) + a[k + 1] * (3.0 * x2 - 2.0 * x);
}

double PiecewiseDrift::a_at(double tt) const {
  if (t.size() < 2) return a.front();
  return a_in_segment(segment(tt), tt);
}

double PiecewiseDrift::ia_at(double tt) const {
  if (t.size() < 2) return ia.front() + a.front() * (tt - t.front());
  return ia_in_segment(segment(tt), tt);
}

}  // namespace remo

#pragma once

// Adaptive Gauss-Kronrod 7-15 quadrature on finite intervals.

#include <functional>

namespace remo {

// Integrates f over [a, b] by recursive bisection until the local Kronrod
// error estimate satisfies |err| <= abs_tol + rel_tol * |integral|.
// Throws QuadratureFailure when the recursion depth limit is hit.
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double rel_tol = 1e-10, double abs_tol = 1e-14, int max_depth = 48);

// Single non-adaptive 15-point Kronrod panel; second member is the
// |K15 - G7| error estimate.
struct PanelEstimate {
  double value;
  double error;
};
PanelEstimate gk15_panel(const std::function<double(double)>& f, double a, double b);

}  // namespace remo

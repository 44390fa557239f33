#include "remo/quadrature.hpp"

#include <cmath>

#include "remo/errors.hpp"

namespace remo {

namespace {

// QUADPACK dqk15 abscissae/weights on [-1, 1]; even nodes are the Gauss-7
// points.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

double adapt(const std::function<double(double)>& f, double a, double b, double rel_tol,
             double abs_tol, int depth) {
  const auto est = gk15_panel(f, a, b);
  if (est.error <= abs_tol + rel_tol * std::abs(est.value)) return est.value;
  if (depth <= 0)
    throw QuadratureFailure("integrate_gk: refinement limit reached, residual error " +
                            std::to_string(est.error));
  const double m = 0.5 * (a + b);
  return adapt(f, a, m, rel_tol, 0.5 * abs_tol, depth - 1) +
         adapt(f, m, b, rel_tol, 0.5 * abs_tol, depth - 1);
}

}  // namespace

PanelEstimate gk15_panel(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double x = h * kXgk[i];
    const double fsum = f(c - x) + f(c + x);
    kron += kWgk[i] * fsum;
    if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
  }
  kron *= h;
  gauss *= h;
  return {kron, std::abs(kron - gauss)};
}

double integrate_gk(const std::function<double(double)>& f, double a, double b, double rel_tol,
                    double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  return adapt(f, a, b, rel_tol, abs_tol, max_depth);
}

}  // namespace remo

#include "remo/random_phase.hpp"

#include <cmath>

#include "remo/errors.hpp"

namespace remo {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Two-sided spectral mass outside [-w, w], as a fraction of sigma2
// (analytic per family; mirrors Kernel::spectral_mass_cutoff).
double tail_fraction(const Kernel& k, double w) {
  const double a = k.a(), w0 = k.omega0();
  if (is_gaussian_filter(k.family())) {
    const double sa = 2.0 * std::sqrt(a);
    return 0.5 * (std::erfc((w - w0) / sa) + std::erfc((w + w0) / sa));
  }
  return (std::atan2(a, w - w0) + std::atan2(a, w + w0)) / kPi;
}

// Frequency whose symmetric interval [-w, w] holds the given fraction of
// the spectral mass (bisection on the analytic tail).
double mass_quantile(const Kernel& k, double fraction, double hi_start) {
  const double target = 1.0 - fraction;
  double lo = 0.0, hi = hi_start;
  while (tail_fraction(k, hi) > target) hi *= 2.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (tail_fraction(k, mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

SpectralModel SpectralModel::build(const Kernel& kernel, double duration,
                                   std::size_t n_components_min) {
  if (n_components_min < 1) throw InvalidParameter("mc.n_components", "must be >= 1");
  constexpr double kCaptured = 1.0 - 1e-3;  // spectral mass inside the cutoff

  SpectralModel m;
  m.mean = kernel.mean();
  m.cutoff = kernel.spectral_mass_cutoff(1e-3);

  // huge finite sentinel rather than infinity: this TU builds with fast-math
  const double spacing_cap = duration > 0.0 ? 2.0 * kPi / (10.0 * duration) : 1e300;

  std::size_t n = n_components_min;
  for (;;) {
    m.omega.resize(n);
    double prev = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double q = kCaptured * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
      m.omega[i] = mass_quantile(kernel, q, std::max(kernel.a(), 1e-3));
      // cap the spacing over the bulk of the mass (first 90%) so the
      // synthetic path cannot develop a recurring beat within 10 windows
      if (ok && i > 0 && q < 0.9 && m.omega[i] - prev > spacing_cap) ok = false;
      prev = m.omega[i];
    }
    if (ok) break;
    n *= 2;
    if (n > (1u << 22))
      throw InvalidParameter("mc.n_components", "cannot satisfy the spacing constraints");
  }

  const double mass = kCaptured * kernel.sigma2() / static_cast<double>(n);
  m.amplitude.assign(n, std::sqrt(2.0 * mass));
  return m;
}

SamplePath::SamplePath(const SpectralModel& model, PhiloxStream& stream)
    : mean_(model.mean), omega_(model.omega), amplitude_(model.amplitude) {
  phase_.resize(model.components());
  for (double& phi : phase_) phi = 2.0 * kPi * stream.next_double();
}

SamplePath::SamplePath(const SpectralModel& model, std::span<const double> phases)
    : mean_(model.mean), omega_(model.omega), amplitude_(model.amplitude) {
  if (phases.size() != model.components())
    throw InvalidParameter("phases", "phase count must match the component count");
  phase_.assign(phases.begin(), phases.end());
}

double SamplePath::operator()(double t) const {
  const std::size_t n = omega_.size();
  const double* w = omega_.data();
  const double* a = amplitude_.data();
  const double* p = phase_.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * std::cos(w[i] * t + p[i]);
  return mean_ + acc;
}

std::vector<double> sample_path(const Kernel& kernel, std::span<const double> time_grid,
                                PhiloxStream& stream, std::size_t n_components_min) {
  if (time_grid.empty()) return {};
  const double duration = time_grid.back() - time_grid.front();
  const SpectralModel model = SpectralModel::build(kernel, duration, n_components_min);
  const SamplePath path(model, stream);
  std::vector<double> y(time_grid.size());
  for (std::size_t k = 0; k < time_grid.size(); ++k) y[k] = path(time_grid[k]);
  return y;
}

}  // namespace remo

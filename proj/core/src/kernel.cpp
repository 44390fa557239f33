#include "remo/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "remo/errors.hpp"
#include "remo/quadrature.hpp"

namespace remo {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

const char* to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::OU: return "ou";
    case KernelFamily::ShiftedOU: return "shifted_ou";
    case KernelFamily::GaussianFilter: return "gf";
    case KernelFamily::ShiftedGaussianFilter: return "shifted_gf";
  }
  return "?";
}

KernelFamily kernel_family_from_string(const std::string& name) {
  std::string s;
  s.reserve(name.size());
  for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "ou" || s == "ornstein-uhlenbeck") return KernelFamily::OU;
  if (s == "shifted_ou" || s == "shiftedou") return KernelFamily::ShiftedOU;
  if (s == "gf" || s == "gaussian_filter" || s == "gaussianfilter")
    return KernelFamily::GaussianFilter;
  if (s == "shifted_gf" || s == "shiftedgf" || s == "shifted_gaussian_filter" ||
      s == "shiftedgaussianfilter")
    return KernelFamily::ShiftedGaussianFilter;
  throw InvalidParameter("kernel.family", "unknown kernel family '" + name + "'");
}

bool is_shifted(KernelFamily family) {
  return family == KernelFamily::ShiftedOU || family == KernelFamily::ShiftedGaussianFilter;
}

bool is_gaussian_filter(KernelFamily family) {
  return family == KernelFamily::GaussianFilter ||
         family == KernelFamily::ShiftedGaussianFilter;
}

Kernel make_kernel(const KernelSpec& spec) {
  if (!std::isfinite(spec.sigma2) || spec.sigma2 <= 0.0)
    throw InvalidParameter("kernel.sigma2", "must be finite and > 0");
  if (!std::isfinite(spec.a) || spec.a <= 0.0)
    throw InvalidParameter("kernel.a", "must be finite and > 0");
  if (!std::isfinite(spec.omega0) || spec.omega0 < 0.0)
    throw InvalidParameter("kernel.omega0", "must be finite and >= 0");
  if (!is_shifted(spec.family) && spec.omega0 != 0.0)
    throw InvalidParameter("kernel.omega0", "must be 0 for an unshifted family");
  if (!std::isfinite(spec.mean))
    throw InvalidParameter("kernel.mean", "must be finite");
  return Kernel(spec);
}

double Kernel::covariance(double u) const {
  const double au = std::abs(u);
  const double envelope = is_gaussian_filter(spec_.family)
                              ? spec_.sigma2 * std::exp(-spec_.a * u * u)
                              : spec_.sigma2 * std::exp(-spec_.a * au);
  return is_shifted(spec_.family) ? envelope * std::cos(spec_.omega0 * u) : envelope;
}

double Kernel::spectral_density(double omega) const {
  const double s2 = spec_.sigma2, a = spec_.a, w0 = spec_.omega0;
  switch (spec_.family) {
    case KernelFamily::OU:
      return s2 / kPi * a / (a * a + omega * omega);
    case KernelFamily::ShiftedOU: {
      const double lp = a / (a * a + (w0 + omega) * (w0 + omega));
      const double lm = a / (a * a + (w0 - omega) * (w0 - omega));
      return s2 / (2.0 * kPi) * (lp + lm);
    }
    case KernelFamily::GaussianFilter:
      return s2 / (2.0 * std::sqrt(kPi * a)) * std::exp(-omega * omega / (4.0 * a));
    case KernelFamily::ShiftedGaussianFilter: {
      const double gp = std::exp(-(omega + w0) * (omega + w0) / (4.0 * a));
      const double gm = std::exp(-(omega - w0) * (omega - w0) / (4.0 * a));
      return s2 / (4.0 * std::sqrt(kPi * a)) * (gp + gm);
    }
  }
  return 0.0;
}

namespace {

// Stratonovich correlation time of the shifted Gf kernel by quadrature of
// |C|/s2, summing half-period windows of cos(w0 u) so the integrand is
// smooth and sign-definite inside each window. The Gaussian envelope is
// truncated once it drops below 1e-12.
double shifted_gf_tau(double a, double w0) {
  const double u_max = std::sqrt(std::log(1e12) / a);
  auto f = [a, w0](double u) { return std::abs(std::exp(-a * u * u) * std::cos(w0 * u)); };
  const double rel = 1e-9, abs_tol = 1e-14;
  double total = 0.0;
  if (w0 == 0.0) {
    return integrate_gk(f, 0.0, u_max, rel, abs_tol);
  }
  const double half = kPi / w0;
  double lo = 0.0;
  double hi = 0.5 * half;  // first zero of cos at pi/(2 w0)
  while (lo < u_max) {
    hi = std::min(hi, u_max);
    total += integrate_gk(f, lo, hi, rel, abs_tol);
    lo = hi;
    hi = lo + half;
  }
  return total;
}

}  // namespace

double Kernel::correlation_time() const {
  const double a = spec_.a, w0 = spec_.omega0;
  switch (spec_.family) {
    case KernelFamily::OU:
      return 1.0 / a;
    case KernelFamily::ShiftedOU: {
      if (w0 == 0.0) return 1.0 / a;
      const double base = a / (a * a + w0 * w0);
      const double ratio = std::exp(-a * kPi / (2.0 * w0)) / (1.0 - std::exp(-a * kPi / w0));
      return base + ratio * 2.0 * w0 / (a * a + w0 * w0);
    }
    case KernelFamily::GaussianFilter:
      return std::sqrt(kPi) / (2.0 * std::sqrt(a));
    case KernelFamily::ShiftedGaussianFilter:
      return shifted_gf_tau(a, w0);
  }
  return 0.0;
}

double Kernel::spectral_mass_cutoff(double tail_fraction) const {
  const double a = spec_.a, w0 = spec_.omega0;
  // Analytic two-sided tail mass beyond +-Omega, as a fraction of sigma2.
  auto tail = [&](double omega) -> double {
    if (is_gaussian_filter(spec_.family)) {
      const double sa = 2.0 * std::sqrt(a);
      return 0.5 * (std::erfc((omega - w0) / sa) + std::erfc((omega + w0) / sa));
    }
    return (std::atan2(a, omega - w0) + std::atan2(a, omega + w0)) / kPi;
  };
  double lo = w0;
  double hi = std::max(w0 + 1.0, 2.0 * w0 + 10.0 * a);
  while (tail(hi) > tail_fraction) hi *= 2.0;
  for (int i = 0; i < 200 && (hi - lo) > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (tail(mid) > tail_fraction ? lo : hi) = mid;
  }
  return hi;
}

double decay_for_correlation_time(KernelFamily family, double tau) {
  if (!(tau > 0.0)) throw InvalidParameter("tau_corr", "must be > 0");
  if (is_shifted(family))
    throw InvalidParameter("tau_corr",
                           "correlation-time parameterization is only defined for the "
                           "unshifted families");
  if (is_gaussian_filter(family)) return kPi / (4.0 * tau * tau);  // tau = sqrt(pi)/(2 sqrt(a))
  return 1.0 / tau;                                                // tau = 1/a
}

}  // namespace remo

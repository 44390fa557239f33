#pragma once

// Stationary excitation kernels. Four families:
//
//   I   OU                  C(u) = s2 exp(-a|u|)
//   II  shifted OU          C(u) = s2 exp(-a|u|) cos(w0 u)
//   III Gaussian filter     C(u) = s2 exp(-a u^2)
//   IV  shifted Gf          C(u) = s2 exp(-a u^2) cos(w0 u)
//
// Each exposes its covariance, its spectral density (normalized so that the
// density integrates to the variance), and its Stratonovich correlation time
//   tau = (1/s2) * int_0^inf |C(u)| du,
// analytic for I-III and computed by windowed adaptive quadrature for IV.

#include <string>

namespace remo {

enum class KernelFamily { OU, ShiftedOU, GaussianFilter, ShiftedGaussianFilter };

const char* to_string(KernelFamily family);
KernelFamily kernel_family_from_string(const std::string& name);
bool is_shifted(KernelFamily family);
bool is_gaussian_filter(KernelFamily family);

struct KernelSpec {
  KernelFamily family = KernelFamily::OU;
  double sigma2 = 1.0;  // variance, > 0
  double a = 1.0;       // decay parameter, > 0 (1/time for OU, 1/time^2 for Gf)
  double omega0 = 0.0;  // central spectral frequency, >= 0; 0 for unshifted families
  double mean = 0.0;    // constant mean m_y
};

class Kernel {
 public:
  double covariance(double u) const;
  double spectral_density(double omega) const;
  double correlation_time() const;

  // Smallest Omega such that the spectral mass outside [-Omega, Omega] is
  // below tail_fraction * sigma2 (analytic tail bounds, then bisection).
  double spectral_mass_cutoff(double tail_fraction) const;

  KernelFamily family() const { return spec_.family; }
  double sigma2() const { return spec_.sigma2; }
  double a() const { return spec_.a; }
  double omega0() const { return spec_.omega0; }
  double mean() const { return spec_.mean; }
  const KernelSpec& spec() const { return spec_; }

 private:
  friend Kernel make_kernel(const KernelSpec&);
  explicit Kernel(const KernelSpec& spec) : spec_(spec) {}
  KernelSpec spec_;
};

// Validates the spec and returns the immutable kernel.
// Throws InvalidParameter naming the offending field.
Kernel make_kernel(const KernelSpec& spec);

// Decay parameter that gives an unshifted kernel of this family the requested
// correlation time (OU: a = 1/tau, Gf: a = pi / (4 tau^2)).
double decay_for_correlation_time(KernelFamily family, double tau);

}  // namespace remo

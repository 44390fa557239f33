#pragma once

// Cubic half-oscillator  x' = mu1 x + mu3 x^3 + kappa1 y + kappa3 y^3:
// coefficient container, potential-shape classification and the
// Gaussian-closure coefficient functions
//   A_x  = mu1 + 3 mu3 m_x^2 + 3 mu3 C_xx
//   B_y  = kappa1 + 3 kappa3 m_y^2 + 3 kappa3 s2_y
//   ~B_y = kappa1 +   kappa3 m_y^2 + 3 kappa3 s2_y

#include "remo/kernel.hpp"

namespace remo {

struct OscillatorParams {
  double mu1 = -1.0;    // linear coefficient (1/time)
  double mu3 = 0.0;     // cubic coefficient (1/(time x^2))
  double kappa1 = 1.0;  // linear excitation gain, > 0
  double kappa3 = 0.0;  // cubic excitation gain (1/x^2)

  void validate() const;  // throws InvalidParameter (kappa1 > 0, finite entries)
};

struct InitialMoments {
  double m_x0 = 0.0;
  double c_x0x0 = 0.0;  // >= 0; the initial response-excitation covariance is 0

  void validate() const;
};

// Single-well / double-well taxonomy of U(x) = -mu1 x^2 / 2 - mu3 x^4 / 4.
enum class Stability { Monostable, Bistable, LocallyStable, GloballyUnstable, Linear };

const char* to_string(Stability s);

// Classifies by the signs of (mu1, mu3); throws Unclassifiable for mu1 = 0
// or (mu3 = 0 and mu1 >= 0), which sit outside the taxonomy.
Stability classify_potential(const OscillatorParams& params);

// True when the closed moment system is admissible (BIBO, A_x < 0).
bool solver_admissible(const OscillatorParams& params);

struct CoefficientSet {
  double a_x;        // drift coefficient, < 0 for monostable/linear params
  double b_y;        // covariance forcing gain
  double b_tilde_y;  // mean forcing gain
};

// Closure coefficients for a stationary input (C_yy(t,t) = sigma2, constant
// mean). c_xx must be >= 0.
CoefficientSet coefficients(const OscillatorParams& params, const Kernel& kernel, double m_x,
                            double c_xx);

// Gaussian-closure value of a mixed fourth central moment: 3 c_pp c_pq.
double isserlis_fourth(double c_pp, double c_pq);

}  // namespace remo

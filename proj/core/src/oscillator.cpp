#include "remo/oscillator.hpp"

#include <cmath>

#include "remo/errors.hpp"

namespace remo {

void OscillatorParams::validate() const {
  if (!std::isfinite(mu1)) throw InvalidParameter("oscillator.mu1", "must be finite");
  if (!std::isfinite(mu3)) throw InvalidParameter("oscillator.mu3", "must be finite");
  if (!std::isfinite(kappa1) || kappa1 <= 0.0)
    throw InvalidParameter("oscillator.kappa1", "must be finite and > 0");
  if (!std::isfinite(kappa3)) throw InvalidParameter("oscillator.kappa3", "must be finite");
}

void InitialMoments::validate() const {
  if (!std::isfinite(m_x0)) throw InvalidParameter("init.m_x0", "must be finite");
  if (!std::isfinite(c_x0x0) || c_x0x0 < 0.0)
    throw InvalidParameter("init.c_x0x0", "must be finite and >= 0");
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Monostable: return "monostable";
    case Stability::Bistable: return "bistable";
    case Stability::LocallyStable: return "locally_stable";
    case Stability::GloballyUnstable: return "globally_unstable";
    case Stability::Linear: return "linear";
  }
  return "?";
}

Stability classify_potential(const OscillatorParams& params) {
  const double mu1 = params.mu1, mu3 = params.mu3;
  if (mu1 == 0.0 || (mu3 == 0.0 && mu1 >= 0.0))
    throw Unclassifiable("classify_potential: (mu1, mu3) outside the sign taxonomy");
  if (mu3 == 0.0) return Stability::Linear;  // mu1 < 0 here
  if (mu1 < 0.0) return mu3 < 0.0 ? Stability::Monostable : Stability::LocallyStable;
  return mu3 < 0.0 ? Stability::Bistable : Stability::GloballyUnstable;
}

bool solver_admissible(const OscillatorParams& params) {
  try {
    const Stability s = classify_potential(params);
    return s == Stability::Monostable || s == Stability::Linear;
  } catch (const Unclassifiable&) {
    return false;
  }
}

CoefficientSet coefficients(const OscillatorParams& params, const Kernel& kernel, double m_x,
                            double c_xx) {
  const double my = kernel.mean();
  const double s2 = kernel.sigma2();
  CoefficientSet c;
  c.a_x = params.mu1 + 3.0 * params.mu3 * (m_x * m_x + c_xx);
  c.b_y = params.kappa1 + 3.0 * params.kappa3 * my * my + 3.0 * params.kappa3 * s2;
  c.b_tilde_y = params.kappa1 + params.kappa3 * my * my + 3.0 * params.kappa3 * s2;
  return c;
}

double isserlis_fourth(double c_pp, double c_pq) { return 3.0 * c_pp * c_pq; }

}  // namespace remo

#pragma once

// Bivariate moment sets up to total order 4 and the binomial transform
// between raw moments R^{j1 j2} = E[p^j1 q^j2] and central moments
// C^{j1 j2} = E[(p - m_p)^j1 (q - m_q)^j2].

#include <array>
#include <cstdint>

namespace remo {

class BivariateMoments {
 public:
  static constexpr int kMaxOrder = 4;

  BivariateMoments() { set(0, 0, 1.0); }

  void set(int j1, int j2, double value);
  bool has(int j1, int j2) const;
  double at(int j1, int j2) const;  // throws IncompleteMomentSet when unset

  // True when every (j1, j2) with j1 + j2 <= order is present.
  bool complete_up_to(int order) const;

 private:
  static int index(int j1, int j2);
  std::array<double, (kMaxOrder + 1) * (kMaxOrder + 1)> values_{};
  std::uint32_t present_ = 0;
};

// Inverse binomial transform: central moments from a complete raw set.
// m_p, m_q are the means of p and q. All orders with j1 + j2 <= order are
// produced. Throws IncompleteMomentSet when a required raw entry is missing.
BivariateMoments central_from_raw(const BivariateMoments& raw, double m_p, double m_q,
                                  int order = BivariateMoments::kMaxOrder);

// Forward binomial transform: raw moments from a complete central set.
BivariateMoments raw_from_central(const BivariateMoments& central, double m_p, double m_q,
                                  int order = BivariateMoments::kMaxOrder);

}  // namespace remo

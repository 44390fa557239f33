#include "remo/moments.hpp"

#include <cmath>
#include <string>

#include "remo/errors.hpp"

namespace remo {

namespace {

double binom(int n, int k) {
  static const double table[5][5] = {{1, 0, 0, 0, 0},
                                     {1, 1, 0, 0, 0},
                                     {1, 2, 1, 0, 0},
                                     {1, 3, 3, 1, 0},
                                     {1, 4, 6, 4, 1}};
  return table[n][k];
}

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

int BivariateMoments::index(int j1, int j2) { return j1 * (kMaxOrder + 1) + j2; }

void BivariateMoments::set(int j1, int j2, double value) {
  if (j1 < 0 || j2 < 0 || j1 + j2 > kMaxOrder)
    throw IncompleteMomentSet("moment order (" + std::to_string(j1) + "," + std::to_string(j2) +
                              ") outside the supported range");
  values_[static_cast<std::size_t>(index(j1, j2))] = value;
  present_ |= 1u << index(j1, j2);
}

bool BivariateMoments::has(int j1, int j2) const {
  if (j1 < 0 || j2 < 0 || j1 + j2 > kMaxOrder) return false;
  return (present_ >> index(j1, j2)) & 1u;
}

double BivariateMoments::at(int j1, int j2) const {
  if (!has(j1, j2))
    throw IncompleteMomentSet("missing moment (" + std::to_string(j1) + "," +
                              std::to_string(j2) + ")");
  return values_[static_cast<std::size_t>(index(j1, j2))];
}

bool BivariateMoments::complete_up_to(int order) const {
  for (int j1 = 0; j1 <= order; ++j1)
    for (int j2 = 0; j1 + j2 <= order; ++j2)
      if (!has(j1, j2)) return false;
  return true;
}

namespace {

// Shared binomial expansion: out^{j1 j2} = sum_k binom binom s1^{j1-k1} s2^{j2-k2} in^{k1 k2}
// with (s1, s2) = (m_p, m_q) for central -> raw and (-m_p, -m_q) for raw -> central.
BivariateMoments binomial_transform(const BivariateMoments& in, double s1, double s2, int order) {
  if (!in.complete_up_to(order))
    throw IncompleteMomentSet("moment set incomplete up to order " + std::to_string(order));
  BivariateMoments out;
  for (int j1 = 0; j1 <= order; ++j1) {
    for (int j2 = 0; j1 + j2 <= order; ++j2) {
      double acc = 0.0;
      for (int k1 = 0; k1 <= j1; ++k1)
        for (int k2 = 0; k2 <= j2; ++k2)
          acc += binom(j1, k1) * binom(j2, k2) * ipow(s1, j1 - k1) * ipow(s2, j2 - k2) *
                 in.at(k1, k2);
      out.set(j1, j2, acc);
    }
  }
  return out;
}

}  // namespace

BivariateMoments central_from_raw(const BivariateMoments& raw, double m_p, double m_q,
                                  int order) {
  return binomial_transform(raw, -m_p, -m_q, order);
}

BivariateMoments raw_from_central(const BivariateMoments& central, double m_p, double m_q,
                                  int order) {
  return binomial_transform(central, m_p, m_q, order);
}

}  // namespace remo

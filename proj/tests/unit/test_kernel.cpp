#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "remo/errors.hpp"
#include "remo/kernel.hpp"
#include "support/oracles.hpp"

using namespace remo;

namespace {

Kernel ou(double s2 = 1.0, double a = 1.0) { return make_kernel({KernelFamily::OU, s2, a}); }
Kernel gf(double s2 = 1.0, double a = 1.0) {
  return make_kernel({KernelFamily::GaussianFilter, s2, a});
}
Kernel sou(double a, double w0) { return make_kernel({KernelFamily::ShiftedOU, 1.0, a, w0}); }
Kernel sgf(double a, double w0) {
  return make_kernel({KernelFamily::ShiftedGaussianFilter, 1.0, a, w0});
}

// Dyadic-panel integral of the spectral density over [-cutoff, cutoff];
// adaptive Simpson per panel would otherwise miss the spike at the origin.
double spectral_mass(const Kernel& k, double cutoff) {
  auto f = [&](double w) { return k.spectral_density(w); };
  const double first = std::max(k.omega0() + k.a(), 1.0);
  double mass = oracles::integrate(f, -std::min(first, cutoff), std::min(first, cutoff), 1e-14);
  double lo = first;
  while (lo < cutoff) {
    const double hi = std::min(2.0 * lo, cutoff);
    mass += oracles::integrate(f, lo, hi, 1e-14);
    mass += oracles::integrate(f, -hi, -lo, 1e-14);
    lo = hi;
  }
  return mass;
}

// Stratonovich correlation time by direct quadrature of |C|, windowed at the
// zeros of the oscillatory factor.
double tau_by_quadrature(const Kernel& k, double u_max) {
  auto f = [&](double u) { return std::abs(k.covariance(u)); };
  const double w0 = k.omega0();
  if (w0 == 0.0) return oracles::integrate(f, 0.0, u_max, 1e-13) / k.sigma2();
  double total = 0.0, lo = 0.0;
  double hi = 0.5 * oracles::kPi / w0;
  while (lo < u_max) {
    total += oracles::integrate(f, lo, std::min(hi, u_max), 1e-13);
    lo = std::min(hi, u_max);
    hi = lo + oracles::kPi / w0;
  }
  return total / k.sigma2();
}

}  // namespace

TEST_CASE("kernel validation names the offending field") {
  CHECK_NOTHROW(make_kernel({KernelFamily::OU, 1.0, 1.0, 0.0, 0.0}));
  CHECK_NOTHROW(make_kernel({KernelFamily::ShiftedGaussianFilter, 1.0, 1.0, 2.0, 0.0}));

  CHECK_THROWS_WITH_AS(make_kernel({KernelFamily::OU, 1.0, 0.0}), doctest::Contains("kernel.a"),
                       InvalidParameter);
  CHECK_THROWS_WITH_AS(make_kernel({KernelFamily::OU, -1.0, 1.0}),
                       doctest::Contains("kernel.sigma2"), InvalidParameter);
  CHECK_THROWS_WITH_AS(make_kernel({KernelFamily::OU, 0.0, 1.0}),
                       doctest::Contains("kernel.sigma2"), InvalidParameter);
  CHECK_THROWS_WITH_AS(make_kernel({KernelFamily::GaussianFilter, 1.0, 1.0, -0.5}),
                       doctest::Contains("kernel.omega0"), InvalidParameter);
  // omega0 must be 0 on the unshifted families
  CHECK_THROWS_WITH_AS(make_kernel({KernelFamily::OU, 1.0, 1.0, 2.0}),
                       doctest::Contains("kernel.omega0"), InvalidParameter);
}

TEST_CASE("covariance closed forms") {
  CHECK(ou().covariance(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ou().covariance(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  // shifted Gf at u = 1, w0 = pi: exp(-1) cos(pi) = -exp(-1)
  CHECK(sgf(1.0, oracles::kPi).covariance(1.0) ==
        doctest::Approx(-std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("covariance is even and bounded by sigma2") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  const Kernel kernels[] = {ou(2.0, 0.7), sou(1.3, 2.1), gf(0.5, 2.0), sgf(0.8, 3.0)};
  for (const auto& k : kernels) {
    for (int i = 0; i < 500; ++i) {
      const double x = u(rng);
      CHECK(k.covariance(-x) == k.covariance(x));
      CHECK(std::abs(k.covariance(x)) <= k.sigma2() * (1.0 + 1e-15));
    }
    CHECK(k.covariance(0.0) == doctest::Approx(k.sigma2()).epsilon(1e-15));
  }
}

TEST_CASE("spectral density values and normalization") {
  CHECK(ou().spectral_density(0.0) == doctest::Approx(1.0 / oracles::kPi).epsilon(1e-14));
  CHECK(gf().spectral_density(0.0) ==
        doctest::Approx(1.0 / (2.0 * std::sqrt(oracles::kPi))).epsilon(1e-14));

  const Kernel kernels[] = {ou(2.0, 0.7), sou(1.0, 2.0), gf(1.5, 0.4), sgf(1.0, 3.0)};
  for (const auto& k : kernels) {
    // nonnegative, even
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 10.0 * (k.a() + k.omega0() + 1.0));
    for (int i = 0; i < 200; ++i) {
      const double w = u(rng);
      CHECK(k.spectral_density(w) >= 0.0);
      CHECK(k.spectral_density(-w) == doctest::Approx(k.spectral_density(w)).epsilon(1e-14));
    }
    // Wiener-Khinchin normalization: integral of S equals sigma2 to 1e-6
    // relative, over a cutoff with analytic tail mass below 1e-9.
    const double cutoff = k.spectral_mass_cutoff(1e-9);
    const double mass = spectral_mass(k, cutoff);
    CHECK(mass == doctest::Approx(k.sigma2()).epsilon(1e-6));
  }
}

TEST_CASE("spectral mass cutoff honors the requested tail fraction") {
  for (const Kernel& k : {ou(1.0, 2.0), gf(1.0, 0.5), sou(1.0, 4.0), sgf(2.0, 1.5)}) {
    const double cutoff = k.spectral_mass_cutoff(1e-3);
    const double mass = spectral_mass(k, cutoff);
    CHECK(mass >= (1.0 - 1.2e-3) * k.sigma2());
  }
}

TEST_CASE("correlation time: analytic families") {
  CHECK(ou(1.0, 2.0).correlation_time() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(gf(1.0, 1.0).correlation_time() ==
        doctest::Approx(0.8862269254527579).epsilon(1e-12));  // sqrt(pi)/2
  // shifted OU closed form at a = 1, w0 = 1 (frozen from the closed form and
  // confirmed by direct quadrature of |C| below)
  const Kernel k = sou(1.0, 1.0);
  CHECK(k.correlation_time() == doctest::Approx(0.7172686040473479).epsilon(1e-12));
  CHECK(k.correlation_time() == doctest::Approx(tau_by_quadrature(k, 40.0)).epsilon(1e-6));
}

TEST_CASE("correlation time: shifted Gf by windowed quadrature") {
  const Kernel k = sgf(1.0, 2.0);
  const double tau = k.correlation_time();
  CHECK(tau > 0.0);
  CHECK(tau == doctest::Approx(tau_by_quadrature(k, 7.0)).epsilon(1e-8));

  // continuity in omega0
  const Kernel k2 = sgf(1.0, 2.0 + 1e-6);
  CHECK(std::abs(k2.correlation_time() - tau) < 1e-4);
}

TEST_CASE("shifted families at omega0 = 0 reduce to the unshifted ones") {
  const Kernel a = ou(1.3, 0.8), b = sou(0.8, 0.0);
  const Kernel c = gf(1.3, 0.8), d = make_kernel({KernelFamily::ShiftedGaussianFilter, 1.3, 0.8});
  for (double u : {0.0, 0.3, 1.7, 5.0}) {
    CHECK(make_kernel({KernelFamily::ShiftedOU, 1.3, 0.8}).covariance(u) == a.covariance(u));
    CHECK(d.covariance(u) == c.covariance(u));
  }
  for (double w : {0.0, 0.5, 2.0}) {
    CHECK(make_kernel({KernelFamily::ShiftedOU, 1.3, 0.8}).spectral_density(w) ==
          doctest::Approx(a.spectral_density(w)).epsilon(1e-15));
    CHECK(d.spectral_density(w) == doctest::Approx(c.spectral_density(w)).epsilon(1e-15));
  }
  CHECK(b.correlation_time() == doctest::Approx(1.0 / 0.8).epsilon(1e-14));
  CHECK(d.correlation_time() == doctest::Approx(c.correlation_time()).epsilon(1e-9));
}

TEST_CASE("Wiener-Khinchin round trip: transforming C reproduces S pointwise") {
  struct Case {
    Kernel k;
    double u_max;
  };
  const Case cases[] = {{ou(1.0, 1.0), 34.0},
                        {gf(1.0, 1.0), 6.2},
                        {sou(1.0, 2.0), 34.0},
                        {sgf(1.0, 2.0), 6.2}};
  for (const auto& [k, u_max] : cases) {
    const double cutoff = k.spectral_mass_cutoff(1e-3);
    for (int i = 0; i <= 8; ++i) {
      const double w = cutoff * static_cast<double>(i) / 8.0;
      const double s_ref = k.spectral_density(w);
      const double s_num =
          oracles::cosine_transform([&](double u) { return k.covariance(u); }, w, u_max, 1e-14) /
          oracles::kPi;
      CHECK(s_num == doctest::Approx(s_ref).epsilon(1e-4));
    }
  }
}

TEST_CASE("correlation-time parameterization helpers") {
  CHECK(decay_for_correlation_time(KernelFamily::OU, 0.5) == doctest::Approx(2.0));
  const double a = decay_for_correlation_time(KernelFamily::GaussianFilter, 1.0);
  CHECK(gf(1.0, a).correlation_time() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(decay_for_correlation_time(KernelFamily::ShiftedOU, 1.0), InvalidParameter);
  CHECK_THROWS_AS(decay_for_correlation_time(KernelFamily::OU, 0.0), InvalidParameter);
}

TEST_CASE("family names round-trip") {
  for (KernelFamily f : {KernelFamily::OU, KernelFamily::ShiftedOU, KernelFamily::GaussianFilter,
                         KernelFamily::ShiftedGaussianFilter})
    CHECK(kernel_family_from_string(to_string(f)) == f);
  CHECK_THROWS_AS(kernel_family_from_string("triangle"), InvalidParameter);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "remo/errors.hpp"
#include "remo/kernel.hpp"
#include "remo/moments.hpp"
#include "remo/oscillator.hpp"

using namespace remo;

TEST_CASE("potential classification covers the sign taxonomy") {
  CHECK(classify_potential({-1.0, -0.7, 1.0, 0.0}) == Stability::Monostable);
  CHECK(classify_potential({+1.0, -0.7, 1.0, 0.0}) == Stability::Bistable);
  CHECK(classify_potential({-1.0, +0.5, 1.0, 0.0}) == Stability::LocallyStable);
  CHECK(classify_potential({+1.0, +0.5, 1.0, 0.0}) == Stability::GloballyUnstable);
  CHECK(classify_potential({-1.0, 0.0, 1.0, 0.0}) == Stability::Linear);

  CHECK_THROWS_AS(classify_potential({0.0, -0.7, 1.0, 0.0}), Unclassifiable);
  CHECK_THROWS_AS(classify_potential({0.0, 0.0, 1.0, 0.0}), Unclassifiable);
  CHECK_THROWS_AS(classify_potential({+1.0, 0.0, 1.0, 0.0}), Unclassifiable);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((OscillatorParams{-1.0, 0.0, 0.0, 0.0}).validate(), InvalidParameter);
  CHECK_THROWS_AS((OscillatorParams{-1.0, 0.0, -1.0, 0.0}).validate(), InvalidParameter);
  CHECK_NOTHROW((OscillatorParams{-1.0, -0.7, 1.0, 0.4}).validate());
  CHECK_THROWS_AS((InitialMoments{0.0, -0.1}).validate(), InvalidParameter);
}

TEST_CASE("closure coefficients") {
  const Kernel centered = make_kernel({KernelFamily::OU, 1.0, 1.0});

  SUBCASE("linear case: a_x = mu1 everywhere") {
    for (double m : {-3.0, 0.0, 2.0})
      for (double c : {0.0, 1.0, 7.0})
        CHECK(coefficients({-1.0, 0.0, 1.0, 0.0}, centered, m, c).a_x == doctest::Approx(-1.0));
  }

  SUBCASE("paper arithmetic") {
    CHECK(coefficients({-1.0, -0.7, 1.0, 0.0}, centered, 0.0, 1.0).a_x ==
          doctest::Approx(-3.1).epsilon(1e-15));
    // b coefficients at m_y = 1, sigma2 = 1, kappa3 = 0.4
    const Kernel with_mean = make_kernel({KernelFamily::OU, 1.0, 1.0, 0.0, 1.0});
    const CoefficientSet c = coefficients({-1.0, 0.0, 1.0, 0.4}, with_mean, 0.0, 0.0);
    CHECK(c.b_tilde_y == doctest::Approx(2.6).epsilon(1e-15));
    CHECK(c.b_y == doctest::Approx(3.4).epsilon(1e-15));
  }

  SUBCASE("kappa3 = 0 collapses both gains to kappa1") {
    const CoefficientSet c = coefficients({-1.0, -0.7, 2.5, 0.0}, centered, 1.0, 2.0);
    CHECK(c.b_y == 2.5);
    CHECK(c.b_tilde_y == 2.5);
  }
}

TEST_CASE("drift negativity for monostable and linear parameters") {
  const Kernel kernel = make_kernel({KernelFamily::OU, 1.0, 1.0});
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> mu1(-5.0, -1e-3), mu3(-5.0, 0.0), m(-10.0, 10.0),
      c(0.0, 100.0);
  for (int i = 0; i < 2000; ++i) {
    const OscillatorParams p{mu1(rng), mu3(rng), 1.0, 0.0};
    CHECK(coefficients(p, kernel, m(rng), c(rng)).a_x < 0.0);
  }
}

TEST_CASE("Isserlis fourth moment") {
  CHECK(isserlis_fourth(1.0, 0.5) == doctest::Approx(1.5));
  CHECK(isserlis_fourth(0.0, 123.0) == 0.0);

  // brute-force sampling oracle: E[p^3 q] for a zero-mean bivariate Gaussian
  // with Var = 1, Cov = 0.5 is 3 * Var * Cov = 1.5
  std::mt19937 rng(99);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double rho = 0.5;
  const std::size_t n = 100000;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z1 = gauss(rng), z2 = gauss(rng);
    const double p = z1;
    const double q = rho * z1 + std::sqrt(1.0 - rho * rho) * z2;
    acc += p * p * p * q;
  }
  CHECK(acc / static_cast<double>(n) == doctest::Approx(1.5).epsilon(0.1 / 1.5));
}

TEST_CASE("binomial moment transforms") {
  SUBCASE("E[pq] = 1 with unit means gives zero covariance") {
    BivariateMoments raw;
    raw.set(1, 0, 1.0);
    raw.set(0, 1, 1.0);
    raw.set(2, 0, 2.0);
    raw.set(1, 1, 1.0);
    raw.set(0, 2, 2.0);
    const BivariateMoments c = central_from_raw(raw, 1.0, 1.0, 2);
    CHECK(c.at(1, 1) == doctest::Approx(0.0));
    CHECK(c.at(1, 0) == doctest::Approx(0.0));
  }

  SUBCASE("zero means: central equals raw at every order") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    BivariateMoments raw;
    for (int j1 = 0; j1 <= 4; ++j1)
      for (int j2 = 0; j1 + j2 <= 4; ++j2)
        if (j1 + j2 > 0) raw.set(j1, j2, u(rng));
    raw.set(1, 0, 0.0);
    raw.set(0, 1, 0.0);
    const BivariateMoments c = central_from_raw(raw, 0.0, 0.0);
    for (int j1 = 0; j1 <= 4; ++j1)
      for (int j2 = 0; j1 + j2 <= 4; ++j2)
        CHECK(c.at(j1, j2) == doctest::Approx(raw.at(j1, j2)).epsilon(1e-14));
  }

  SUBCASE("round trip is the identity to 1e-10 relative") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
      BivariateMoments raw;
      for (int j1 = 0; j1 <= 4; ++j1)
        for (int j2 = 0; j1 + j2 <= 4; ++j2)
          if (j1 + j2 > 0) raw.set(j1, j2, u(rng));
      const double mp = raw.at(1, 0), mq = raw.at(0, 1);
      const BivariateMoments back = raw_from_central(central_from_raw(raw, mp, mq), mp, mq);
      for (int j1 = 0; j1 <= 4; ++j1)
        for (int j2 = 0; j1 + j2 <= 4; ++j2)
          CHECK(back.at(j1, j2) ==
                doctest::Approx(raw.at(j1, j2)).epsilon(1e-10).scale(1.0));
    }
  }

  SUBCASE("sampled non-Gaussian pair: transform matches direct central moments") {
    std::mt19937 rng(31);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t n = 20000;
    std::vector<double> p(n), q(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double z = gauss(rng), w = gauss(rng);
      p[i] = z * z + 0.3 * z;  // skewed
      q[i] = z + 0.5 * w;
    }
    double sp = 0, sq = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sp += p[i];
      sq += q[i];
    }
    const double mp = sp / n, mq = sq / n;

    BivariateMoments raw;
    for (int j1 = 0; j1 <= 4; ++j1)
      for (int j2 = 0; j1 + j2 <= 4; ++j2) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          acc += std::pow(p[i], j1) * std::pow(q[i], j2);
        raw.set(j1, j2, acc / static_cast<double>(n));
      }
    const BivariateMoments c = central_from_raw(raw, mp, mq);

    for (int j1 = 0; j1 <= 4; ++j1)
      for (int j2 = 0; j1 + j2 <= 4; ++j2) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          acc += std::pow(p[i] - mp, j1) * std::pow(q[i] - mq, j2);
        const double direct = acc / static_cast<double>(n);
        CHECK(c.at(j1, j2) == doctest::Approx(direct).epsilon(1e-10).scale(1.0));
      }
  }

  SUBCASE("incomplete sets are rejected") {
    BivariateMoments raw;
    raw.set(1, 1, 1.0);
    CHECK_THROWS_AS(central_from_raw(raw, 0.0, 0.0), IncompleteMomentSet);
    CHECK_THROWS_AS(raw.at(2, 0), IncompleteMomentSet);
    CHECK_THROWS_AS(raw.set(5, 0, 1.0), IncompleteMomentSet);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "remo/csv.hpp"
#include "remo/config.hpp"
#include "remo/errors.hpp"
#include "remo/ode.hpp"
#include "remo/quadrature.hpp"

using namespace remo;

TEST_CASE("dp45: exponential decay") {
  auto rhs = [](double, const std::array<double, 1>& y, std::array<double, 1>& dy) {
    dy[0] = -y[0];
  };
  std::array<double, 1> y{1.0};
  integrate_dp45<1>(rhs, 0.0, 5.0, y, {1e-10, 1e-12});
  CHECK(y[0] == doctest::Approx(std::exp(-5.0)).epsilon(1e-9));
}

TEST_CASE("dp45: harmonic oscillator keeps its energy") {
  auto rhs = [](double, const std::array<double, 2>& y, std::array<double, 2>& dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  std::array<double, 2> y{1.0, 0.0};
  integrate_dp45<2>(rhs, 0.0, 20.0 * 3.14159265358979323846, y, {1e-10, 1e-12});
  CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(y[1] == doctest::Approx(0.0).epsilon(1e-7).scale(1.0));
}

TEST_CASE("dp45: error scales with the tolerance") {
  auto rhs = [](double t, const std::array<double, 1>& y, std::array<double, 1>& dy) {
    dy[0] = std::cos(t) * y[0];
  };
  auto solve = [&](double tol) {
    std::array<double, 1> y{1.0};
    integrate_dp45<1>(rhs, 0.0, 10.0, y, {tol, tol * 1e-2});
    return std::abs(y[0] - std::exp(std::sin(10.0)));
  };
  CHECK(solve(1e-4) > solve(1e-10));
  CHECK(solve(1e-10) < 1e-8);
}

TEST_CASE("dp45: finite-time blow-up raises IntegratorFailure") {
  auto rhs = [](double, const std::array<double, 1>& y, std::array<double, 1>& dy) {
    dy[0] = y[0] * y[0];
  };
  std::array<double, 1> y{1.0};
  CHECK_THROWS_AS(integrate_dp45<1>(rhs, 0.0, 2.0, y, {1e-8, 1e-10, 0.0, 20000}),
                  IntegratorFailure);
}

TEST_CASE("gauss-kronrod quadrature") {
  CHECK(integrate_gk([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(integrate_gk([](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate_gk([](double x) { return std::exp(-x * x); }, -8.0, 8.0) ==
        doctest::Approx(std::sqrt(3.14159265358979323846)).epsilon(1e-12));
  // oscillatory
  CHECK(integrate_gk([](double x) { return std::cos(40.0 * x); }, 0.0, 1.0) ==
        doctest::Approx(std::sin(40.0) / 40.0).epsilon(1e-10));
}

TEST_CASE("gauss-kronrod reports divergent refinement") {
  CHECK_THROWS_AS(integrate_gk([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-12, 1e-16),
                  QuadratureFailure);
}

TEST_CASE("csv double formatting round-trips bit-exactly") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 30) - 15);
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("config parsing") {
  const auto cfg = KeyValueConfig::parse_string(
      "# comment\n"
      "oscillator.mu1 = -1.0\n"
      "kernel.family = ou   # inline comment\n"
      "output.slices = 0.5, 1.5, 3\n"
      "solver.max_cycles = 25\n"
      "flag.on = true\n");
  CHECK(cfg.get_double("oscillator.mu1") == -1.0);
  CHECK(cfg.get_string("kernel.family") == "ou");
  CHECK(cfg.get_double_list("output.slices") == std::vector<double>{0.5, 1.5, 3.0});
  CHECK(cfg.get_int("solver.max_cycles") == 25);
  CHECK(cfg.get_bool("flag.on", false) == true);
  CHECK(cfg.get_double("absent.key", 7.0) == 7.0);

  SUBCASE("errors carry the key path") {
    CHECK_THROWS_WITH_AS(cfg.get_double("oscillator.mu3"), doctest::Contains("oscillator.mu3"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(cfg.get_double("kernel.family"), doctest::Contains("kernel.family"),
                         ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::parse_string("not a key value line\n"), ConfigError);
  }
}

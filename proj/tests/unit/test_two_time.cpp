#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "remo/causal_solver.hpp"
#include "remo/errors.hpp"
#include "remo/two_time.hpp"
#include "support/oracles.hpp"

using namespace remo;

namespace {

const OscillatorParams kLinear{-1.0, 0.0, 1.0, 0.0};
const OscillatorParams kPaper{-1.0, -0.7, 1.0, 0.4};
const InitialMoments kPaperInit{2.0, 1.0};

Kernel ou() { return make_kernel({KernelFamily::OU, 1.0, 1.0}); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

}  // namespace

TEST_CASE("initial cross-section") {
  const Kernel kernel = ou();
  const DiagonalTrajectory traj =
      solve_diagonal(kLinear, kernel, kPaperInit, {0.0, 3.0, 1.0, 20}, {});

  SUBCASE("s = t0 returns C_x0x0") {
    CHECK(initial_cross_section(traj, kPaperInit, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("linear case decays as exp(mu1 (s - t0))") {
    CHECK(initial_cross_section(traj, kPaperInit, 1.0) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  }
  SUBCASE("strictly decreasing magnitude") {
    double prev = initial_cross_section(traj, kPaperInit, 0.0);
    for (double s : {0.5, 1.0, 2.0, 3.0}) {
      const double v = initial_cross_section(traj, kPaperInit, s);
      CHECK(std::abs(v) < std::abs(prev));
      prev = v;
    }
  }
  SUBCASE("outside the history") {
    CHECK_THROWS_AS(initial_cross_section(traj, kPaperInit, 4.0), HistoryTooShort);
  }
}

TEST_CASE("two-time fields on the paper case") {
  const Kernel kernel = ou();
  const GridSpec grid{0.0, 3.0, 0.25, 20};  // 241 nodes
  const DiagonalTrajectory traj = solve_diagonal(kPaper, kernel, kPaperInit, grid, {});
  const TwoTimeField fi = build_two_time_field(traj, kernel, kPaper, kPaperInit,
                                               FieldMethod::Integral);
  const std::size_t n = fi.times.size();

  SUBCASE("row t0 of C_xy is identically zero") {
    for (std::size_t j = 0; j < n; ++j) CHECK(fi.c_xy(0, j) == 0.0);
  }

  SUBCASE("C_xx is symmetric") {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(fi.c_xx(i, j) - fi.c_xx(j, i)));
    CHECK(worst <= 1e-8);
  }

  SUBCASE("diagonal of C_xx matches the solver history") {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(fi.c_xx(i, i) - traj.c_xx_diag[i]));
    CHECK(worst <= 1e-6);
  }

  SUBCASE("diagonal of C_xy matches the solver history") {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(fi.c_xy(i, i) - traj.c_xy_diag[i]));
    CHECK(worst <= 1e-6);
  }

  SUBCASE("Cauchy-Schwarz bounds hold at every grid point") {
    const double s2 = kernel.sigma2();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double xy_bound = std::sqrt(fi.c_xx(i, i) * s2);
        const double xx_bound = std::sqrt(fi.c_xx(i, i) * fi.c_xx(j, j));
        CHECK(std::abs(fi.c_xy(i, j)) <= xy_bound * (1.0 + 1e-9) + 1e-12);
        CHECK(std::abs(fi.c_xx(i, j)) <= xx_bound * (1.0 + 1e-9) + 1e-12);
      }
  }

  SUBCASE("integral and ODE routes agree to 1e-5") {
    const TwoTimeField fo =
        build_two_time_field(traj, kernel, kPaper, kPaperInit, FieldMethod::Ode);
    CHECK(max_abs_diff(fi.c_xy, fo.c_xy) <= 1e-5);
    CHECK(max_abs_diff(fi.c_xx, fo.c_xx) <= 1e-5);
  }

  SUBCASE("grid mismatch is rejected") {
    Matrix wrong(n - 1, n - 1);
    CHECK_THROWS_AS(
        auto_covariance_field(traj, wrong, kernel, kPaper, kPaperInit, FieldMethod::Integral),
        GridMismatch);
  }
}

TEST_CASE("linear case: diagonal of C_xy follows the Duhamel closed form") {
  const Kernel kernel = ou();
  const DiagonalTrajectory traj =
      solve_diagonal(kLinear, kernel, kPaperInit, {0.0, 3.0, 0.5, 25}, {});
  const Matrix cxy =
      cross_covariance_field(traj, kernel, kLinear, FieldMethod::Integral);
  for (std::size_t i = 0; i < traj.times.size(); i += 15) {
    const double t = traj.times[i];
    CHECK(cxy(i, i) ==
          doctest::Approx(0.5 * (1.0 - std::exp(-2.0 * t))).epsilon(1e-6).scale(1.0));
    // independent quadrature oracle of the same transient
    CHECK(cxy(i, i) ==
          doctest::Approx(oracles::linear_transient_cross(
                              -1.0, 1.0, [&](double u) { return kernel.covariance(u); }, t))
              .epsilon(1e-6)
              .scale(1.0));
  }
}

TEST_CASE("vanishing noise: C_xx(t, s) = C_x0x0 exp(mu1 (t + s - 2 t0))") {
  const Kernel kernel = make_kernel({KernelFamily::OU, 1e-30, 1.0});
  const DiagonalTrajectory traj =
      solve_diagonal(kLinear, kernel, kPaperInit, {0.0, 2.0, 0.5, 10}, {});
  const TwoTimeField f =
      build_two_time_field(traj, kernel, kLinear, kPaperInit, FieldMethod::Integral);
  for (std::size_t i = 0; i < f.times.size(); i += 7)
    for (std::size_t j = 0; j < f.times.size(); j += 7)
      CHECK(f.c_xx(i, j) ==
            doctest::Approx(std::exp(-(f.times[i] + f.times[j]))).epsilon(1e-9));
}

TEST_CASE("PDE residual of the C_xy equation is second order in the grid") {
  const Kernel kernel = ou();
  const double b_y = coefficients(kPaper, kernel, 0.0, 0.0).b_y;
  auto residual = [&](int fine) {
    const DiagonalTrajectory traj =
        solve_diagonal(kPaper, kernel, kPaperInit, {0.0, 3.0, 0.25, fine}, {});
    const Matrix cxy = cross_covariance_field(traj, kernel, kPaper, FieldMethod::Integral);
    const PiecewiseDrift drift = traj.drift();
    double worst = 0.0;
    const std::size_t n = traj.times.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (traj.times[i] < 0.3) continue;
      for (std::size_t j = 0; j < n; j += 5) {
        // the OU kernel has a |t - s| kink: skip stencils that straddle it
        if (i + 2 >= j && j + 2 >= i) continue;
        const double h = traj.times[i + 1] - traj.times[i - 1];
        const double lhs = (cxy(i + 1, j) - cxy(i - 1, j)) / h;
        const double rhs = drift.a_at(traj.times[i]) * cxy(i, j) +
                           b_y * kernel.covariance(traj.times[i] - traj.times[j]);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
    return worst;
  };
  const double coarse = residual(10);
  const double fine = residual(20);
  CHECK(coarse < 5e-3);
  CHECK(fine < coarse / 2.5);
}

TEST_CASE("statistical equilibrium and anticipation support in the long time") {
  const Kernel kernel = ou();
  const double tau = kernel.correlation_time();
  const GridSpec grid{0.0, 10.0, 0.5, 10};  // h = 0.05, 201 nodes
  const DiagonalTrajectory traj = solve_diagonal(kPaper, kernel, kPaperInit, grid, {});
  const Matrix cxy = cross_covariance_field(traj, kernel, kPaper, FieldMethod::Integral);
  const std::size_t n = traj.times.size();
  const double h = 0.05;
  auto index_of = [&](double t) { return static_cast<std::size_t>(std::lround(t / h)); };

  SUBCASE("the field near (T, T) depends on the lag only") {
    // slide the base point by delta <= tau and compare at equal lag
    for (double delta : {0.25, 0.5, 1.0}) {
      for (double u : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        const double s1 = 10.0 - 1.0, s2 = 10.0 - 1.0 - delta;
        const double v1 = cxy(index_of(s1 + u), index_of(s1));
        const double v2 = cxy(index_of(s2 + u), index_of(s2));
        CHECK(std::abs(v1 - v2) < 1e-3);
      }
    }
  }

  SUBCASE("C_xy stays above 1% of its peak for t < s over a tau-sized window") {
    const std::size_t js = index_of(10.0 - 2.0 * tau);
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) peak = std::max(peak, std::abs(cxy(i, js)));
    // walk backwards from t = s until the column drops below 1% of the peak
    std::size_t i = js;
    while (i > 0 && std::abs(cxy(i, js)) > 0.01 * peak) --i;
    const double window = traj.times[js] - traj.times[i];
    CHECK(window >= 0.5 * tau);
    CHECK(window <= 6.0 * tau);
  }
}

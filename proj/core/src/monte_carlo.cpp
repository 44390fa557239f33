#include "remo/monte_carlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>

#include "remo/errors.hpp"
#include "remo/moments.hpp"

namespace remo {

void McConfig::validate() const {
  if (n_samples < 2) throw InvalidParameter("mc.n_samples", "must be >= 2");
  if (n_components < 1) throw InvalidParameter("mc.n_components", "must be >= 1");
  if (grid.size() < 1) throw InvalidParameter("mc.grid", "output grid must be non-empty");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1]))
      throw InvalidParameter("mc.grid", "output grid must be strictly increasing");
  x0.validate();
  if (!(ode_rel_tol > 0.0) || !(ode_abs_tol > 0.0))
    throw InvalidParameter("mc.ode_tol", "integrator tolerances must be > 0");
  if (threads < 0) throw InvalidParameter("mc.threads", "must be >= 0");
}

std::vector<double> integrate_sample(const OscillatorParams& params, const SamplePath& y,
                                     double x0, std::span<const double> grid,
                                     const OdeOptions& opt) {
  const double mu1 = params.mu1, mu3 = params.mu3;
  const double k1 = params.kappa1, k3 = params.kappa3;
  auto rhs = [&](double t, const std::array<double, 1>& s, std::array<double, 1>& ds) {
    const double yv = y(t);
    const double x = s[0];
    ds[0] = mu1 * x + mu3 * x * x * x + k1 * yv + k3 * yv * yv * yv;
  };
  std::vector<double> out(grid.size());
  std::array<double, 1> state{x0};
  out[0] = x0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    integrate_dp45<1>(rhs, grid[k - 1], grid[k], state, opt);
    out[k] = state[0];
  }
  return out;
}

namespace {

// Jackknife standard error: loo(i) is the statistic with sample i removed.
template <class LeaveOneOut>
double jackknife_se(std::size_t n, LeaveOneOut&& loo) {
  double s1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) s1 += loo(i);
  const double mean = s1 / static_cast<double>(n);
  double s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = loo(i) - mean;
    s2 += d * d;
  }
  return std::sqrt(s2 * static_cast<double>(n - 1) / static_cast<double>(n));
}

std::size_t nearest_node(const std::vector<double>& grid, double t) {
  std::size_t best = 0;
  double dist = std::abs(grid[0] - t);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double d = std::abs(grid[k] - t);
    if (d < dist) {
      dist = d;
      best = k;
    }
  }
  return best;
}

}  // namespace

EnsembleMoments run_ensemble(const OscillatorParams& params, const Kernel& kernel,
                             const McConfig& cfg) {
  params.validate();
  cfg.validate();
  if (!solver_admissible(params))
    throw InvalidParameter("oscillator",
                           "run_ensemble requires a monostable or linear (BIBO) configuration");

  const std::size_t n = cfg.n_samples;
  const std::size_t K = cfg.grid.size();
  if (n * K > 50'000'000)
    throw InvalidParameter("mc", "ensemble snapshot storage would exceed the supported size");

  const SpectralModel model =
      SpectralModel::build(kernel, cfg.grid.back() - cfg.grid.front(), cfg.n_components);
  const OdeOptions ode_opt{cfg.ode_rel_tol, cfg.ode_abs_tol};

  Matrix X(n, K), Y(n, K);

  // Sample i always draws from Philox stream (seed, i): x0 first, then the
  // component phases. Workers pull fixed-size blocks; the stored rows are
  // identical whatever the scheduling.
  std::atomic<std::size_t> next_block{0};
  constexpr std::size_t kBlock = 64;
  const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
  std::mutex err_mutex;
  std::string err_msg;
  bool failed = false;

  auto worker = [&]() {
    for (;;) {
      const std::size_t b = next_block.fetch_add(1);
      if (b >= n_blocks) return;
      const std::size_t lo = b * kBlock;
      const std::size_t hi = std::min(lo + kBlock, n);
      for (std::size_t i = lo; i < hi; ++i) {
        try {
          PhiloxStream stream(cfg.seed, i);
          const double x0 = cfg.x0.m_x0 + std::sqrt(cfg.x0.c_x0x0) * stream.next_gaussian();
          const SamplePath path(model, stream);
          const std::vector<double> x = integrate_sample(params, path, x0, cfg.grid, ode_opt);
          for (std::size_t k = 0; k < K; ++k) {
            X(i, k) = x[k];
            Y(i, k) = path(cfg.grid[k]);
          }
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!failed) {
            failed = true;
            err_msg = "sample " + std::to_string(i) + ": " + e.what();
          }
          return;
        }
      }
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const std::size_t n_threads =
      std::min<std::size_t>(cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads) : hw,
                            n_blocks);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t w = 0; w < n_threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed) throw IntegratorFailure("run_ensemble: " + err_msg);

  // Reductions in fixed sample order.
  EnsembleMoments out;
  out.times = cfg.grid;
  out.n_samples = n;
  out.m_x.resize(K);
  out.c_xx_diag.resize(K);
  out.c_xy_diag.resize(K);
  const double dn = static_cast<double>(n);

  for (std::size_t k = 0; k < K; ++k) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = X(i, k), y = Y(i, k);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double mx = sx / dn, my = sy / dn;
    out.m_x[k].value = mx;
    out.c_xx_diag[k].value = sxx / dn - mx * mx;
    out.c_xy_diag[k].value = sxy / dn - mx * my;

    out.m_x[k].se = jackknife_se(n, [&](std::size_t i) { return (sx - X(i, k)) / (dn - 1.0); });
    out.c_xx_diag[k].se = jackknife_se(n, [&](std::size_t i) {
      const double x = X(i, k);
      const double m = (sx - x) / (dn - 1.0);
      return (sxx - x * x) / (dn - 1.0) - m * m;
    });
    out.c_xy_diag[k].se = jackknife_se(n, [&](std::size_t i) {
      const double x = X(i, k), y = Y(i, k);
      const double m1 = (sx - x) / (dn - 1.0);
      const double m2 = (sy - y) / (dn - 1.0);
      return (sxy - x * y) / (dn - 1.0) - m1 * m2;
    });
  }

  for (double s : cfg.slice_times) {
    const std::size_t js = nearest_node(cfg.grid, s);
    TwoTimeSlice slice;
    slice.s = cfg.grid[js];
    slice.c_xy.resize(K);
    slice.c_xx.resize(K);
    double sys = 0, sxs = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sys += Y(i, js);
      sxs += X(i, js);
    }
    for (std::size_t k = 0; k < K; ++k) {
      double sx = 0, sxy = 0, sxx = 0;
      for (std::size_t i = 0; i < n; ++i) {
        sx += X(i, k);
        sxy += X(i, k) * Y(i, js);
        sxx += X(i, k) * X(i, js);
      }
      const double mx = sx / dn;
      slice.c_xy[k].value = sxy / dn - mx * (sys / dn);
      slice.c_xx[k].value = sxx / dn - mx * (sxs / dn);
      slice.c_xy[k].se = jackknife_se(n, [&](std::size_t i) {
        const double x = X(i, k), ys = Y(i, js);
        const double m1 = (sx - x) / (dn - 1.0);
        const double m2 = (sys - ys) / (dn - 1.0);
        return (sxy - x * ys) / (dn - 1.0) - m1 * m2;
      });
      slice.c_xx[k].se = jackknife_se(n, [&](std::size_t i) {
        const double x = X(i, k), xs = X(i, js);
        const double m1 = (sx - x) / (dn - 1.0);
        const double m2 = (sxs - xs) / (dn - 1.0);
        return (sxx - x * xs) / (dn - 1.0) - m1 * m2;
      });
    }
    out.slices.push_back(std::move(slice));
  }

  for (double t : cfg.snapshot_times) {
    const std::size_t jt = nearest_node(cfg.grid, t);
    Snapshot snap;
    snap.t = cfg.grid[jt];
    snap.x.resize(n);
    snap.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      snap.x[i] = X(i, jt);
      snap.y[i] = Y(i, jt);
    }
    out.snapshots.push_back(std::move(snap));
  }

  return out;
}

namespace {

const Snapshot& find_snapshot(const EnsembleMoments& ensemble, double t) {
  const double tol = 1e-9 * std::max(1.0, std::abs(t));
  for (const auto& s : ensemble.snapshots)
    if (std::abs(s.t - t) <= tol) return s;
  throw InvalidParameter("snapshot",
                         "no per-sample snapshot retained at t = " + std::to_string(t));
}

struct RawSums {
  // sums[j1][j2] = sum_i x^j1 y^j2 over the ensemble, j1 + j2 <= 4
  double sums[5][5] = {};

  static RawSums of(const Snapshot& snap) {
    RawSums r;
    const std::size_t n = snap.x.size();
    for (std::size_t i = 0; i < n; ++i) {
      double xp[5], yp[5];
      xp[0] = yp[0] = 1.0;
      for (int j = 1; j <= 4; ++j) {
        xp[j] = xp[j - 1] * snap.x[i];
        yp[j] = yp[j - 1] * snap.y[i];
      }
      for (int j1 = 0; j1 <= 4; ++j1)
        for (int j2 = 0; j1 + j2 <= 4; ++j2) r.sums[j1][j2] += xp[j1] * yp[j2];
    }
    return r;
  }

  // Central moments with sample i removed (i < 0: full ensemble).
  BivariateMoments central(const Snapshot& snap, std::ptrdiff_t drop, std::size_t n) const {
    double xp[5], yp[5];
    if (drop >= 0) {
      xp[0] = yp[0] = 1.0;
      for (int j = 1; j <= 4; ++j) {
        xp[j] = xp[j - 1] * snap.x[static_cast<std::size_t>(drop)];
        yp[j] = yp[j - 1] * snap.y[static_cast<std::size_t>(drop)];
      }
    }
    const double dn = static_cast<double>(drop >= 0 ? n - 1 : n);
    BivariateMoments raw;
    for (int j1 = 0; j1 <= 4; ++j1)
      for (int j2 = 0; j1 + j2 <= 4; ++j2) {
        double s = sums[j1][j2];
        if (drop >= 0) s -= xp[j1] * yp[j2];
        raw.set(j1, j2, s / dn);
      }
    return central_from_raw(raw, raw.at(1, 0), raw.at(0, 1));
  }
};

}  // namespace

RatioEstimate moment_ratios(const EnsembleMoments& ensemble, double t) {
  const Snapshot& snap = find_snapshot(ensemble, t);
  const std::size_t n = snap.x.size();
  const RawSums sums = RawSums::of(snap);
  const BivariateMoments c = sums.central(snap, -1, n);

  const double c11 = c.at(1, 1);
  const double se_c11 = jackknife_se(
      n, [&](std::size_t i) { return sums.central(snap, static_cast<std::ptrdiff_t>(i), n).at(1, 1); });
  if (std::abs(c11) <= 10.0 * se_c11)
    throw DegenerateDenominator(
        "moment_ratios: C_xy is statistically indistinguishable from zero (|C_xy| = " +
        std::to_string(std::abs(c11)) + ", SE = " + std::to_string(se_c11) + ")");

  auto r13_of = [](const BivariateMoments& m) {
    return m.at(1, 3) / (3.0 * m.at(0, 2) * m.at(1, 1));
  };
  auto r31_of = [](const BivariateMoments& m) {
    return m.at(3, 1) / (3.0 * m.at(2, 0) * m.at(1, 1));
  };

  RatioEstimate r;
  r.t = snap.t;
  r.r13 = r13_of(c);
  r.r31 = r31_of(c);
  r.se_r13 = jackknife_se(n, [&](std::size_t i) {
    return r13_of(sums.central(snap, static_cast<std::ptrdiff_t>(i), n));
  });
  r.se_r31 = jackknife_se(n, [&](std::size_t i) {
    return r31_of(sums.central(snap, static_cast<std::ptrdiff_t>(i), n));
  });
  return r;
}

Histogram2D re_pdf_histogram(const EnsembleMoments& ensemble, double t, std::size_t bins_x,
                             std::size_t bins_y, std::optional<std::pair<double, double>> x_range,
                             std::optional<std::pair<double, double>> y_range) {
  if (bins_x < 1 || bins_y < 1)
    throw InvalidParameter("histogram.bins", "need at least one bin per axis");
  const Snapshot& snap = find_snapshot(ensemble, t);
  const std::size_t n = snap.x.size();

  auto resolve_range = [&](const std::vector<double>& v,
                           std::optional<std::pair<double, double>> r) {
    if (r) return *r;
    auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
    double lo = *lo_it, hi = *hi_it;
    if (lo == hi) {  // degenerate sample cloud
      lo -= 0.5;
      hi += 0.5;
    }
    return std::make_pair(lo, hi);
  };
  const auto [x_lo, x_hi] = resolve_range(snap.x, x_range);
  const auto [y_lo, y_hi] = resolve_range(snap.y, y_range);
  if (!(x_hi > x_lo) || !(y_hi > y_lo))
    throw InvalidParameter("histogram.range", "range must have positive width");

  Histogram2D h;
  h.x_edges.resize(bins_x + 1);
  h.y_edges.resize(bins_y + 1);
  for (std::size_t i = 0; i <= bins_x; ++i)
    h.x_edges[i] = x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(bins_x);
  for (std::size_t j = 0; j <= bins_y; ++j)
    h.y_edges[j] = y_lo + (y_hi - y_lo) * static_cast<double>(j) / static_cast<double>(bins_y);
  h.mass = Matrix(bins_x, bins_y, 0.0);

  std::size_t in_range = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = snap.x[i], y = snap.y[i];
    if (x < x_lo || x > x_hi || y < y_lo || y > y_hi) continue;
    auto bin = [](double v, double lo, double hi, std::size_t nb) {
      std::size_t b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(nb));
      return std::min(b, nb - 1);  // top edge falls into the last bin
    };
    h.mass(bin(x, x_lo, x_hi, bins_x), bin(y, y_lo, y_hi, bins_y)) += 1.0;
    ++in_range;
  }
  if (in_range == 0) throw EmptyBins("re_pdf_histogram: the requested range excludes all samples");
  for (std::size_t i = 0; i < bins_x; ++i)
    for (std::size_t j = 0; j < bins_y; ++j) h.mass(i, j) /= static_cast<double>(in_range);
  return h;
}

}  // namespace remo

#pragma once

// Experiment orchestration behind the command line: config -> validated
// component inputs, subcommand runners, CSV artifacts and the run manifest.
// All numeric CSV bodies are byte-reproducible for a fixed (config, seed),
// independent of the worker count.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "remo/config.hpp"
#include "remo/grid.hpp"
#include "remo/kernel.hpp"
#include "remo/monte_carlo.hpp"
#include "remo/oscillator.hpp"
#include "remo/two_time.hpp"

namespace remo {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;  // overrides the config seed
  int threads = 0;                    // 0 = hardware concurrency
  bool verbose = false;
};

struct ExperimentConfig {
  OscillatorParams params;
  KernelSpec kernel_spec;
  InitialMoments init{2.0, 1.0};
  GridSpec grid;
  SolverConfig solver;

  // Monte Carlo settings
  std::size_t mc_samples = 10000;
  std::size_t mc_components = 1024;
  std::uint64_t seed = 1;
  double mc_rel_tol = 1e-5;
  double mc_abs_tol = 1e-7;
  std::size_t mc_output_points = 61;

  // requested outputs
  FieldMethod field_method = FieldMethod::Integral;
  std::vector<double> slices;
  std::optional<double> ratios_at;
  std::optional<double> histogram_at;
  std::size_t histogram_bins = 41;

  // Parses the component sections. When require_physics is false the
  // oscillator/kernel keys fall back to the canonical nonlinear
  // non-Gaussian case instead of being required.
  static ExperimentConfig from_config(const KeyValueConfig& cfg, bool require_physics = true);

  Kernel kernel() const { return make_kernel(kernel_spec); }
  McConfig mc_config(int threads) const;
};

// Known subcommands: solve, field, ito-check, mc, sweep, table1, fig12.
bool is_known_subcommand(const std::string& name);

// Runs one subcommand against a parsed config, writing CSV artifacts and a
// manifest into opt.out_dir. Throws remo errors with a stage label prefix.
void run_subcommand(const std::string& name, const KeyValueConfig& cfg, const RunOptions& opt);

}  // namespace remo

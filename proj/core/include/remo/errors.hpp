#pragma once

#include <stdexcept>
#include <string>

namespace remo {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric parameter violates its contract. Carries the dotted field name.
class InvalidParameter : public Error {
 public:
  InvalidParameter(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Potential shape outside the (mu1, mu3) sign taxonomy.
class Unclassifiable : public Error {
 public:
  using Error::Error;
};

// An adaptive quadrature did not reach its requested tolerance.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

// Adaptive ODE integration failed (blow-up, step underflow, step budget).
class IntegratorFailure : public Error {
 public:
  using Error::Error;
};

// A time was requested beyond the recorded trajectory history.
class HistoryTooShort : public Error {
 public:
  using Error::Error;
};

// The prediction/correction loop did not satisfy the convergence test.
class NoConvergence : public Error {
 public:
  NoConvergence(std::size_t step, int max_cycles, const std::string& what)
      : Error(what), step_(step), max_cycles_(max_cycles) {}
  std::size_t step() const { return step_; }
  int max_cycles() const { return max_cycles_; }

 private:
  std::size_t step_;
  int max_cycles_;
};

// Variance became negative or non-finite during a solve.
class InstabilityDetected : public Error {
 public:
  using Error::Error;
};

// Two histories that must share a grid do not.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

// Two trajectories that must share a time interval do not.
class IntervalMismatch : public Error {
 public:
  using Error::Error;
};

// The localized moment system only exists for a centered OU input.
class NotLocalizable : public Error {
 public:
  using Error::Error;
};

// A moment set is missing entries required for a transform.
class IncompleteMomentSet : public Error {
 public:
  using Error::Error;
};

// A ratio denominator is statistically indistinguishable from zero.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

// A histogram range excludes every sample.
class EmptyBins : public Error {
 public:
  using Error::Error;
};

// A configuration file entry is missing or malformed. Carries the key path.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace remo

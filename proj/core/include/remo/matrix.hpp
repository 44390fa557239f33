#pragma once

// Minimal dense row-major matrix of doubles.

#include <cstddef>
#include <vector>

namespace remo {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return v_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return v_[i * cols_ + j]; }
  const std::vector<double>& data() const { return v_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> v_;
};

}  // namespace remo

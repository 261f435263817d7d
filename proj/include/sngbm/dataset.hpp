#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sngbm {

/// Dense row-major matrix of feature values.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c) {}

  double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }

  std::span<const double> row(std::size_t r) const {
    return {values.data() + r * cols, cols};
  }
  std::span<double> row(std::size_t r) { return {values.data() + r * cols, cols}; }
};

struct Dataset {
  Matrix features;
  std::vector<double> targets;
  std::vector<std::string> feature_names;

  std::size_t rows() const { return features.rows; }
  std::size_t cols() const { return features.cols; }

  // Throws DataError on the first non-finite cell, InvalidInput on shape
  // problems (n < 2, d < 1, length or name-count mismatch).
  void validate() const;
};

/// Throws DataError naming the first non-finite cell.
void require_finite(const Matrix& m);

}  // namespace sngbm

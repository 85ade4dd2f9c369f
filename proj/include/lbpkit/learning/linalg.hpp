#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lbpkit {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  /// Throws DimensionMismatch for ragged input.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const noexcept {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }
  std::span<double> row(std::size_t r) noexcept {
    return std::span<double>(data_).subspan(r * cols_, cols_);
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // row i is the unit eigenvector of values[i]
  int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a symmetric matrix. Sweeps continue until
/// the off-diagonal Frobenius norm drops below tolerance * max(1, ||A||_F).
/// Each eigenvector is signed so its largest-magnitude entry is positive.
SymmetricEigen jacobi_eigen(const Matrix& symmetric, double tolerance = 1e-12,
                            int max_sweeps = 100);

}  // namespace lbpkit

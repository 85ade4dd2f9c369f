#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lbpkit/learning/linalg.hpp"

namespace lbpkit {

/// Principal axes of a sample matrix (one sample per row).
struct PcaModel {
  std::vector<double> mean;
  Matrix components;           // orthonormal rows, largest variance first
  std::vector<double> variances;  // population variance along each row

  std::size_t dim() const noexcept { return mean.size(); }
};

/// Eigen-decomposition of the population covariance matrix (Jacobi).
/// Tiny negative eigenvalues from rounding are clamped to zero.
/// Throws TooFewSamples for fewer than two rows.
PcaModel pca_fit(const Matrix& data);

/// Coordinates of each (centered) row along the first n_components axes.
/// Throws TooManyComponents if n_components > dim, DimensionMismatch on width.
Matrix pca_project(const PcaModel& model, const Matrix& data, std::size_t n_components);

/// Inverse of pca_project: mean + coords * components[0..k).
Matrix pca_reconstruct(const PcaModel& model, const Matrix& coords);

std::string pca_json(const PcaModel& model);
PcaModel pca_from_json(std::string_view json);

}  // namespace lbpkit

#include "lbpkit/learning/mds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lbpkit/error.hpp"

namespace lbpkit {

Matrix mds_embed(const Matrix& distances, std::size_t out_dim) {
  const std::size_t n = distances.rows();
  if (distances.cols() != n || n == 0) {
    throw Error(ErrorKind::DimensionMismatch, "distance matrix must be square and nonempty");
  }
  if (out_dim == 0) throw Error(ErrorKind::InvalidArgument, "output dimension must be >= 1");
  if (out_dim > n) {
    throw Error(ErrorKind::TooManyComponents, "cannot embed " + std::to_string(n) + " points in " +
                                                  std::to_string(out_dim) + " dimensions");
  }
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (double v : distances.row(i)) scale = std::max(scale, std::abs(v));
  }
  const double tol = 1e-9 * std::max(1.0, scale);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(distances(i, i)) > tol) {
      throw Error(ErrorKind::NonzeroDiagonal, "distance(" + std::to_string(i) + ", " +
                                                  std::to_string(i) + ") is not zero");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distances(i, j) < 0.0 || distances(j, i) < 0.0) {
        throw Error(ErrorKind::InvalidArgument, "distances must be nonnegative");
      }
      if (std::abs(distances(i, j) - distances(j, i)) > tol) {
        throw Error(ErrorKind::AsymmetricInput, "distance matrix is not symmetric at (" +
                                                    std::to_string(i) + ", " + std::to_string(j) +
                                                    ")");
      }
    }
  }

  // B = -1/2 J D^2 J with J = I - 11'/n.
  Matrix b(n, n);
  std::vector<double> row_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = 0.5 * (distances(i, j) + distances(j, i));
      b(i, j) = d * d;
      row_mean[i] += b(i, j);
    }
    grand += row_mean[i];
    row_mean[i] /= static_cast<double>(n);
  }
  grand /= static_cast<double>(n) * static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      b(i, j) = -0.5 * (b(i, j) - row_mean[i] - row_mean[j] + grand);
    }
  }

  const SymmetricEigen eig = jacobi_eigen(b);
  Matrix coords(n, out_dim);
  for (std::size_t k = 0; k < out_dim; ++k) {
    const double lambda = eig.values[k];
    if (lambda <= 0.0) continue;
    const double root = std::sqrt(lambda);
    for (std::size_t i = 0; i < n; ++i) coords(i, k) = eig.vectors(k, i) * root;
  }
  return coords;
}

Matrix distance_matrix(const Matrix& points, DistanceKind kind) {
  const std::size_t n = points.rows();
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = histogram_distance(kind, points.row(i), points.row(j));
    }
  }
  return d;
}

}  // namespace lbpkit

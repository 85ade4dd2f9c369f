#pragma once

#include <cstddef>

#include "lbpkit/learning/distance.hpp"
#include "lbpkit/learning/linalg.hpp"

namespace lbpkit {

/// Classical (Torgerson) scaling: double-center the squared distances,
/// eigen-decompose, and scale the top out_dim eigenvectors by the square root
/// of their eigenvalues. Negative eigenvalues give zero coordinates.
/// Throws AsymmetricInput / NonzeroDiagonal (tolerance 1e-9 relative to the
/// largest entry), InvalidArgument for negative entries or out_dim == 0,
/// TooManyComponents if out_dim exceeds the number of points.
Matrix mds_embed(const Matrix& distances, std::size_t out_dim);

/// Pairwise distance matrix between the rows of `points`.
Matrix distance_matrix(const Matrix& points, DistanceKind kind = DistanceKind::L2);

}  // namespace lbpkit

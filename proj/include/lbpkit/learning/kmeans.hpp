#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lbpkit/learning/linalg.hpp"

namespace lbpkit {

struct KMeansModel {
  std::size_t k = 0;
  Matrix centroids;                     // k rows
  std::vector<std::size_t> assignments;  // one per point
  std::size_t iterations = 0;            // update steps performed
  bool converged = false;
  double sse = 0.0;                      // sum of squared Euclidean distances
  std::vector<double> sse_history;       // SSE after each update step
};

/// Lloyd iteration from explicit starting centroids. Each round assigns every
/// point to its nearest centroid (lowest index on ties); the run stops when
/// the assignment no longer changes, no centroid moves more than 1e-12, or
/// max_iter updates have run. A cluster left empty takes the point farthest
/// from its own centroid. Throws InvalidArgument for max_iter == 0 or
/// mismatched widths.
KMeansModel kmeans_fit_from(const Matrix& points, const Matrix& initial_centroids,
                            std::size_t max_iter);

/// Starts from k distinct points drawn with SeededRng(seed): indices are
/// shuffled and the first k points with distinct coordinates are taken.
/// Throws KTooLarge when k exceeds the number of distinct points (or k == 0).
KMeansModel kmeans_fit(const Matrix& points, std::size_t k, std::uint64_t seed,
                       std::size_t max_iter);

/// Runs seeds first_seed .. first_seed+restarts-1 and keeps the lowest SSE
/// (earliest seed on ties).
KMeansModel kmeans_best_of(const Matrix& points, std::size_t k, std::uint64_t first_seed,
                           std::size_t restarts, std::size_t max_iter);

double kmeans_sse(const Matrix& points, const Matrix& centroids,
                  std::span<const std::size_t> assignments);

std::string kmeans_json(const KMeansModel& model);

}  // namespace lbpkit

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lbpkit/learning/dataset.hpp"
#include "lbpkit/learning/distance.hpp"

namespace lbpkit {

struct KnnConfig {
  std::size_t k = 1;
  DistanceKind distance = DistanceKind::ChiSquare;
};

struct KnnResult {
  std::string label;
  /// Training indices of the k nearest samples, nearest first.
  std::vector<std::size_t> neighbors;
  std::vector<double> distances;
};

/// Majority vote among the k nearest training samples. Equal distances rank
/// the lower training index first. Vote ties go to the label with the smaller
/// summed neighbor distance, then the lexicographically smaller label.
/// Throws InsufficientTrainingData when train.size() < k (or k == 0),
/// DimensionMismatch when the query length differs from train.dim().
KnnResult knn_classify(const LabeledDataset& train, const KnnConfig& config,
                       std::span<const double> query);

}  // namespace lbpkit

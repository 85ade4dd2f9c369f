#include "lbpkit/learning/knn.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "lbpkit/error.hpp"

namespace lbpkit {

KnnResult knn_classify(const LabeledDataset& train, const KnnConfig& config,
                       std::span<const double> query) {
  if (config.k == 0 || train.size() < config.k) {
    throw Error(ErrorKind::InsufficientTrainingData,
                "k=" + std::to_string(config.k) + " needs at least that many training samples, have " +
                    std::to_string(train.size()));
  }
  if (query.size() != train.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "query has " + std::to_string(query.size()) +
                                                  " features, training data " +
                                                  std::to_string(train.dim()));
  }

  std::vector<double> dist(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    dist[i] = histogram_distance(config.distance, train[i].features, query);
  }
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto nearer = [&](std::size_t a, std::size_t b) {
    return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
  };
  const auto kth = order.begin() + static_cast<std::ptrdiff_t>(config.k);
  std::partial_sort(order.begin(), kth, order.end(), nearer);

  KnnResult result;
  struct Vote {
    std::size_t count = 0;
    double distance_sum = 0.0;
  };
  std::map<std::string, Vote> votes;  // ordered, so iteration is lexicographic
  for (auto it = order.begin(); it != kth; ++it) {
    result.neighbors.push_back(*it);
    result.distances.push_back(dist[*it]);
    Vote& v = votes[train[*it].label];
    ++v.count;
    v.distance_sum += dist[*it];
  }
  const Vote* best = nullptr;
  for (const auto& [label, v] : votes) {
    if (!best || v.count > best->count ||
        (v.count == best->count && v.distance_sum < best->distance_sum)) {
      best = &v;
      result.label = label;
    }
  }
  return result;
}

}  // namespace lbpkit

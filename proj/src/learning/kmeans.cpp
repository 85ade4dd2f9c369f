#include "lbpkit/learning/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <json.hpp>

#include "lbpkit/error.hpp"
#include "lbpkit/learning/rng.hpp"

namespace lbpkit {
namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

std::size_t nearest(const Matrix& centroids, std::span<const double> x) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.rows(); ++c) {
    const double d = squared_distance(centroids.row(c), x);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

void recompute_mean(const Matrix& points, std::span<const std::size_t> assignments,
                    std::size_t cluster, Matrix& centroids) {
  auto row = centroids.row(cluster);
  std::fill(row.begin(), row.end(), 0.0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < points.rows(); ++i) {
    if (assignments[i] != cluster) continue;
    ++count;
    const auto p = points.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] += p[j];
  }
  for (double& v : row) v /= static_cast<double>(count);
}

}  // namespace

double kmeans_sse(const Matrix& points, const Matrix& centroids,
                  std::span<const std::size_t> assignments) {
  double s = 0.0;
  for (std::size_t i = 0; i < points.rows(); ++i) {
    s += squared_distance(points.row(i), centroids.row(assignments[i]));
  }
  return s;
}

KMeansModel kmeans_fit_from(const Matrix& points, const Matrix& initial_centroids,
                            std::size_t max_iter) {
  if (max_iter == 0) throw Error(ErrorKind::InvalidArgument, "max_iter must be >= 1");
  if (initial_centroids.rows() == 0 || initial_centroids.cols() != points.cols()) {
    throw Error(ErrorKind::InvalidArgument, "initial centroids do not match the data width");
  }
  if (points.rows() == 0) throw Error(ErrorKind::EmptyInput, "k-means needs data");

  const std::size_t n = points.rows();
  const std::size_t k = initial_centroids.rows();
  KMeansModel m;
  m.k = k;
  m.centroids = initial_centroids;
  m.assignments.assign(n, 0);
  std::vector<std::size_t> counts(k);

  for (bool first = true;; first = false) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = nearest(m.centroids, points.row(i));
      changed = changed || c != m.assignments[i];
      m.assignments[i] = c;
    }
    if (!first && !changed) {
      m.converged = true;
      break;
    }
    const Matrix previous = m.centroids;
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t a : m.assignments) ++counts[a];
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) recompute_mean(points, m.assignments, c, m.centroids);
    }
    // Empty clusters take the worst-fit point; its old cluster is re-averaged.
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      std::size_t worst = 0;
      double worst_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[m.assignments[i]] < 2) continue;
        const double d = squared_distance(points.row(i), m.centroids.row(m.assignments[i]));
        if (d > worst_d) {
          worst_d = d;
          worst = i;
        }
      }
      if (worst_d < 0.0) break;  // every cluster is a singleton; nothing to move
      const std::size_t donor = m.assignments[worst];
      m.assignments[worst] = c;
      --counts[donor];
      counts[c] = 1;
      const auto p = points.row(worst);
      std::copy(p.begin(), p.end(), m.centroids.row(c).begin());
      recompute_mean(points, m.assignments, donor, m.centroids);
    }
    ++m.iterations;
    m.sse_history.push_back(kmeans_sse(points, m.centroids, m.assignments));

    double max_move = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      max_move = std::max(max_move, std::sqrt(squared_distance(previous.row(c), m.centroids.row(c))));
    }
    if (max_move <= 1e-12) {
      m.converged = true;
      break;
    }
    if (m.iterations == max_iter) break;
  }
  m.sse = kmeans_sse(points, m.centroids, m.assignments);
  return m;
}

KMeansModel kmeans_fit(const Matrix& points, std::size_t k, std::uint64_t seed,
                       std::size_t max_iter) {
  if (k == 0) throw Error(ErrorKind::KTooLarge, "k must be >= 1");
  std::vector<std::size_t> order(points.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  SeededRng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));

  Matrix init(k, points.cols());
  std::size_t chosen = 0;
  for (std::size_t idx : order) {
    if (chosen == k) break;
    const auto p = points.row(idx);
    bool duplicate = false;
    for (std::size_t c = 0; c < chosen && !duplicate; ++c) {
      const auto q = init.row(c);
      duplicate = std::equal(p.begin(), p.end(), q.begin());
    }
    if (duplicate) continue;
    std::copy(p.begin(), p.end(), init.row(chosen).begin());
    ++chosen;
  }
  if (chosen < k) {
    throw Error(ErrorKind::KTooLarge, "k=" + std::to_string(k) + " exceeds the " +
                                          std::to_string(chosen) + " distinct points");
  }
  return kmeans_fit_from(points, init, max_iter);
}

KMeansModel kmeans_best_of(const Matrix& points, std::size_t k, std::uint64_t first_seed,
                           std::size_t restarts, std::size_t max_iter) {
  if (restarts == 0) throw Error(ErrorKind::InvalidArgument, "need at least one restart");
  KMeansModel best = kmeans_fit(points, k, first_seed, max_iter);
  for (std::size_t r = 1; r < restarts; ++r) {
    KMeansModel m = kmeans_fit(points, k, first_seed + r, max_iter);
    if (m.sse < best.sse) best = std::move(m);
  }
  return best;
}

std::string kmeans_json(const KMeansModel& model) {
  nlohmann::ordered_json j;
  j["k"] = model.k;
  auto cents = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < model.centroids.rows(); ++r) {
    const auto row = model.centroids.row(r);
    cents.push_back(std::vector<double>(row.begin(), row.end()));
  }
  j["centroids"] = std::move(cents);
  j["iterations"] = model.iterations;
  j["converged"] = model.converged;
  j["sse"] = model.sse;
  return j.dump();
}

}  // namespace lbpkit

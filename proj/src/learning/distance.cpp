#include "lbpkit/learning/distance.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "lbpkit/error.hpp"

namespace lbpkit {

std::string_view to_string(DistanceKind kind) noexcept {
  switch (kind) {
    case DistanceKind::ChiSquare: return "chi-square";
    case DistanceKind::L1: return "l1";
    case DistanceKind::L2: return "l2";
    case DistanceKind::Intersection: return "intersection";
  }
  return "chi-square";
}

DistanceKind parse_distance_kind(std::string_view name) {
  if (name == "chi-square" || name == "chi2") return DistanceKind::ChiSquare;
  if (name == "l1") return DistanceKind::L1;
  if (name == "l2") return DistanceKind::L2;
  if (name == "intersection") return DistanceKind::Intersection;
  throw Error(ErrorKind::InvalidArgument, "unknown distance kind '" + std::string(name) + "'");
}

double histogram_distance(DistanceKind kind, std::span<const double> a, std::span<const double> b) {
  return histogram_distance(kind, a, b, kernels::active());
}

double histogram_distance(DistanceKind kind, std::span<const double> a, std::span<const double> b,
                          const kernels::KernelTable& k) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::LengthMismatch, "histogram lengths differ: " + std::to_string(a.size()) +
                                               " vs " + std::to_string(b.size()));
  }
  const std::size_t n = a.size();
  switch (kind) {
    case DistanceKind::ChiSquare:
      return k.chi_square(a.data(), b.data(), n);
    case DistanceKind::L1:
      return k.l1(a.data(), b.data(), n);
    case DistanceKind::L2:
      return std::sqrt(k.l2_squared(a.data(), b.data(), n));
    case DistanceKind::Intersection: {
      for (auto h : {a, b}) {
        const double total = std::accumulate(h.begin(), h.end(), 0.0);
        if (std::abs(total - 1.0) > 1e-6) {
          throw Error(ErrorKind::NotNormalized,
                      "histogram intersection needs normalized inputs (sum " +
                          std::to_string(total) + ")");
        }
      }
      return 1.0 - k.min_sum(a.data(), b.data(), n);
    }
  }
  return 0.0;
}

}  // namespace lbpkit

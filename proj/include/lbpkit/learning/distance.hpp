#pragma once

#include <span>
#include <string_view>

#include "lbpkit/kernels.hpp"

namespace lbpkit {

enum class DistanceKind { ChiSquare, L1, L2, Intersection };

std::string_view to_string(DistanceKind kind) noexcept;
/// Accepts "chi-square", "l1", "l2", "intersection".
DistanceKind parse_distance_kind(std::string_view name);

/// Histogram dissimilarity:
///   chi-square    sum (a-b)^2 / (a+b) over bins with a+b > 0
///   l1, l2        Manhattan and Euclidean distance
///   intersection  1 - sum min(a, b); both inputs must sum to 1 (+- 1e-6)
/// Throws LengthMismatch for unequal lengths, NotNormalized for intersection
/// on inputs that do not sum to one.
double histogram_distance(DistanceKind kind, std::span<const double> a, std::span<const double> b);
double histogram_distance(DistanceKind kind, std::span<const double> a, std::span<const double> b,
                          const kernels::KernelTable& kernels);

}  // namespace lbpkit

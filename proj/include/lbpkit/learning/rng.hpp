#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace lbpkit {

/// Seeded draws shared by every randomized procedure (splits, k-means init).
///
/// The engine is std::minstd_rand: the Lehmer generator x' = 48271 x mod
/// (2^31 - 1), fully specified by the C++ standard. The seed is reduced mod
/// 2^31 - 1 (a zero state becomes 1). Bounded draws use (x - 1) mod n, and
/// shuffles are Fisher-Yates from the last element down, so a seed yields the
/// same sequence on every conforming implementation.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed)
      : engine_(static_cast<std::minstd_rand::result_type>(seed % 2147483647ULL)) {}

  std::uint32_t next() { return static_cast<std::uint32_t>(engine_()); }

  /// Integer in [0, n). n must be positive.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() - 1u) % n; }

  /// Uniform real in [0, 1).
  double unit() { return static_cast<double>(next() - 1u) / 2147483646.0; }

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = below(i);
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::minstd_rand engine_;
};

}  // namespace lbpkit

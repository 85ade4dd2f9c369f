#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace lbpkit {

enum class MappingKind { Full, U2, Ri, Riu2 };

std::string_view to_string(MappingKind kind) noexcept;
/// Accepts "full", "u2", "ri", "riu2"; throws InvalidArgument otherwise.
MappingKind parse_mapping_kind(std::string_view name);

inline constexpr int kMinSamples = 4;
inline constexpr int kMaxSamples = 24;
inline constexpr int kMaxTableSamples = 16;

/// Rotates the low P bits of `code` left by k positions (k may be any integer).
std::uint32_t rotate_bits(std::uint32_t code, int k, int P);

/// Number of 0/1 changes walking the P bits circularly.
int circular_transitions(std::uint32_t code, int P);

/// Smallest value over the P cyclic rotations of `code`.
std::uint32_t min_rotation(std::uint32_t code, int P);

/// Code -> histogram bin assignment.
///
///   full  identity, 2^P bins (P <= 16 only)
///   u2    codes with at most two circular transitions get their own bin in
///         ascending code order; all other codes share the final bin
///   ri    one bin per rotation orbit, ordered by the orbit's minimum value
///   riu2  uniform orbits indexed by their number of set bits (0..P), all
///         non-uniform codes in bin P+1
///
/// For P <= 16 the full table is materialized; larger P answers bin() by
/// searching the sorted list of uniform codes or orbit representatives.
class CodeMapping {
 public:
  MappingKind kind() const noexcept { return kind_; }
  int samples() const noexcept { return samples_; }
  std::uint32_t bin_count() const noexcept { return bin_count_; }

  std::uint32_t bin(std::uint32_t code) const noexcept {
    return table_.empty() ? compute_bin(code) : table_[code];
  }

  bool materialized() const noexcept { return !table_.empty(); }
  /// 2^P entries when materialized, empty otherwise.
  std::span<const std::uint32_t> table() const noexcept { return table_; }

  /// Bin lookup that never consults the materialized table.
  std::uint32_t compute_bin(std::uint32_t code) const noexcept;

 private:
  friend CodeMapping build_code_mapping(MappingKind kind, int P);

  MappingKind kind_ = MappingKind::Full;
  int samples_ = 0;
  std::uint32_t bin_count_ = 0;
  std::vector<std::uint32_t> table_;
  // u2: uniform codes ascending; ri: orbit representatives ascending.
  std::vector<std::uint32_t> sorted_keys_;
};

/// Throws UnsupportedP unless 4 <= P <= 24 (and P <= 16 for Full).
CodeMapping build_code_mapping(MappingKind kind, int P);

}  // namespace lbpkit

#include "lbpkit/mapping.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "lbpkit/error.hpp"

namespace lbpkit {
namespace {

std::uint32_t low_mask(int P) { return (std::uint32_t{1} << P) - 1u; }

// Uniform codes of width P in ascending order: all-zero, all-one, and every
// circular run of 1..P-1 ones.
std::vector<std::uint32_t> uniform_codes(int P) {
  std::vector<std::uint32_t> out{0u, low_mask(P)};
  for (int len = 1; len < P; ++len) {
    const std::uint32_t run = (std::uint32_t{1} << len) - 1u;
    for (int start = 0; start < P; ++start) out.push_back(rotate_bits(run, start, P));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Binary necklaces of length P in lexicographic order (Fredricksen-Kessler-Maiorana).
// Reading each word most-significant-bit first, lexicographic order is numeric
// order and the lexicographically least rotation is the minimum rotation.
std::vector<std::uint32_t> necklace_representatives(int P) {
  std::vector<std::uint32_t> out;
  std::vector<int> a(static_cast<std::size_t>(P) + 1, 0);
  auto emit = [&] {
    std::uint32_t v = 0;
    for (int i = 1; i <= P; ++i) v = (v << 1) | static_cast<std::uint32_t>(a[i]);
    out.push_back(v);
  };
  // Iterative FKM: a[1..P] is the current prenecklace.
  int i = 1;
  emit();  // all zeros is a necklace (period 1 divides P)
  while (true) {
    i = P;
    while (i > 0 && a[i] == 1) --i;
    if (i == 0) break;
    a[i] = 1;
    for (int j = i + 1; j <= P; ++j) a[j] = a[j - i];
    if (P % i == 0) emit();
  }
  return out;
}

}  // namespace

std::string_view to_string(MappingKind kind) noexcept {
  switch (kind) {
    case MappingKind::Full: return "full";
    case MappingKind::U2: return "u2";
    case MappingKind::Ri: return "ri";
    case MappingKind::Riu2: return "riu2";
  }
  return "full";
}

MappingKind parse_mapping_kind(std::string_view name) {
  if (name == "full") return MappingKind::Full;
  if (name == "u2") return MappingKind::U2;
  if (name == "ri") return MappingKind::Ri;
  if (name == "riu2") return MappingKind::Riu2;
  throw Error(ErrorKind::InvalidArgument, "unknown mapping kind '" + std::string(name) + "'");
}

std::uint32_t rotate_bits(std::uint32_t code, int k, int P) {
  const std::uint32_t mask = low_mask(P);
  code &= mask;
  k %= P;
  if (k < 0) k += P;
  if (k == 0) return code;
  return ((code << k) | (code >> (P - k))) & mask;
}

int circular_transitions(std::uint32_t code, int P) {
  const std::uint32_t rotated = rotate_bits(code, 1, P);
  return std::popcount((code ^ rotated) & low_mask(P));
}

std::uint32_t min_rotation(std::uint32_t code, int P) {
  std::uint32_t best = code & low_mask(P);
  for (int k = 1; k < P; ++k) best = std::min(best, rotate_bits(code, k, P));
  return best;
}

std::uint32_t CodeMapping::compute_bin(std::uint32_t code) const noexcept {
  switch (kind_) {
    case MappingKind::Full:
      return code;
    case MappingKind::U2: {
      const auto it = std::lower_bound(sorted_keys_.begin(), sorted_keys_.end(), code);
      if (it != sorted_keys_.end() && *it == code) {
        return static_cast<std::uint32_t>(it - sorted_keys_.begin());
      }
      return bin_count_ - 1;
    }
    case MappingKind::Ri: {
      const std::uint32_t rep = min_rotation(code, samples_);
      const auto it = std::lower_bound(sorted_keys_.begin(), sorted_keys_.end(), rep);
      return static_cast<std::uint32_t>(it - sorted_keys_.begin());
    }
    case MappingKind::Riu2:
      return circular_transitions(code, samples_) <= 2
                 ? static_cast<std::uint32_t>(std::popcount(code))
                 : static_cast<std::uint32_t>(samples_ + 1);
  }
  return 0;
}

CodeMapping build_code_mapping(MappingKind kind, int P) {
  if (P < kMinSamples || P > kMaxSamples) {
    throw Error(ErrorKind::UnsupportedP,
                "P=" + std::to_string(P) + " outside [" + std::to_string(kMinSamples) + ", " +
                    std::to_string(kMaxSamples) + "]");
  }
  if (kind == MappingKind::Full && P > kMaxTableSamples) {
    throw Error(ErrorKind::UnsupportedP,
                "full mapping needs P <= " + std::to_string(kMaxTableSamples) + ", got " +
                    std::to_string(P));
  }
  CodeMapping m;
  m.kind_ = kind;
  m.samples_ = P;
  switch (kind) {
    case MappingKind::Full:
      m.bin_count_ = std::uint32_t{1} << P;
      break;
    case MappingKind::U2:
      m.sorted_keys_ = uniform_codes(P);
      m.bin_count_ = static_cast<std::uint32_t>(m.sorted_keys_.size()) + 1;
      break;
    case MappingKind::Ri:
      m.sorted_keys_ = necklace_representatives(P);
      m.bin_count_ = static_cast<std::uint32_t>(m.sorted_keys_.size());
      break;
    case MappingKind::Riu2:
      m.bin_count_ = static_cast<std::uint32_t>(P) + 2;
      break;
  }
  if (P <= kMaxTableSamples) {
    const std::uint32_t n = std::uint32_t{1} << P;
    m.table_.resize(n);
    for (std::uint32_t c = 0; c < n; ++c) m.table_[c] = m.compute_bin(c);
  }
  return m;
}

}  // namespace lbpkit

#pragma once

// Inner loops of the descriptor and distance code. Every kernel exists as a
// scalar reference and, where the target supports it, an AVX2 variant. The
// variants are selected once at startup from CPUID; the LBP kernels produce
// bit-identical output on every path, the reductions agree to rounding.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace lbpkit::kernels {

/// One circular sample expressed relative to the center pixel pointer.
/// The interpolated value is
///   w00*p[off] + w10*p[off+step_x] + w01*p[off+step_y] + w11*p[off+step_x+step_y]
/// where step_x/step_y are 0 when the fractional part is zero, so an integer
/// tap never touches pixels outside its own position.
struct RingTap {
  std::ptrdiff_t offset = 0;
  std::ptrdiff_t step_x = 0;
  std::ptrdiff_t step_y = 0;
  double w00 = 1.0;
  double w10 = 0.0;
  double w01 = 0.0;
  double w11 = 0.0;
  bool exact = true;  // integer position, only w00 is nonzero
};

/// 3x3 operator over `count` consecutive centers starting at `mid`.
/// `above`/`below` point at the pixels directly above/below `mid`.
/// `contrast` and `variance` may be null.
using BasicRowFn = void (*)(const double* above, const double* mid, const double* below,
                            std::size_t count, std::uint32_t* codes, double* contrast,
                            double* variance);

/// Circular operator: bit p set iff tap p >= center - eps.
using RingRowFn = void (*)(const double* center, const RingTap* taps, std::size_t tap_count,
                           std::size_t count, double eps, std::uint32_t* codes);

/// Reductions over two equal-length vectors.
using ReduceFn = double (*)(const double* a, const double* b, std::size_t n);

struct KernelTable {
  std::string_view name;
  BasicRowFn basic_row;
  RingRowFn ring_row;
  ReduceFn chi_square;  // sum (a-b)^2/(a+b) over a+b > 0
  ReduceFn l1;          // sum |a-b|
  ReduceFn l2_squared;  // sum (a-b)^2
  ReduceFn min_sum;     // sum min(a, b)
};

const KernelTable& scalar_table() noexcept;

/// AVX2 table, or null when not compiled in or not supported by this CPU.
const KernelTable* avx2_table() noexcept;

/// The table used by the library. AVX2 when available unless the environment
/// variable LBPKIT_FORCE_SCALAR is set to a non-empty value other than "0".
const KernelTable& active() noexcept;

}  // namespace lbpkit::kernels

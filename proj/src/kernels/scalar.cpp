#include <algorithm>
#include <cmath>

#include "lbpkit/kernels.hpp"

namespace lbpkit::kernels {
namespace {

void basic_row_scalar(const double* above, const double* mid, const double* below,
                      std::size_t count, std::uint32_t* codes, double* contrast,
                      double* variance) {
  for (std::size_t i = 0; i < count; ++i) {
    // Clockwise from top-left, weights 1, 2, 4, 8, 16, 32, 64, 128.
    const double n[8] = {above[i - 1], above[i], above[i + 1], mid[i + 1],
                         below[i + 1], below[i], below[i - 1], mid[i - 1]};
    const double c = mid[i];
    std::uint32_t code = 0;
    double sum1 = 0.0, sum0 = 0.0, cnt1 = 0.0;
    for (int k = 0; k < 8; ++k) {
      if (n[k] >= c) {
        code |= 1u << k;
        sum1 += n[k];
        cnt1 += 1.0;
      } else {
        sum0 += n[k];
      }
    }
    codes[i] = code;
    if (contrast) {
      const double cnt0 = 8.0 - cnt1;
      contrast[i] = (cnt1 > 0.0 && cnt0 > 0.0) ? sum1 / cnt1 - sum0 / cnt0 : 0.0;
    }
    if (variance) {
      double s = 0.0;
      for (int k = 0; k < 8; ++k) s += n[k];
      const double mean = s / 8.0;
      double ss = 0.0;
      for (int k = 0; k < 8; ++k) ss += (n[k] - mean) * (n[k] - mean);
      variance[i] = ss / 8.0;
    }
  }
}

void ring_row_scalar(const double* center, const RingTap* taps, std::size_t tap_count,
                     std::size_t count, double eps, std::uint32_t* codes) {
  for (std::size_t i = 0; i < count; ++i) {
    const double* c = center + i;
    const double threshold = *c - eps;
    std::uint32_t code = 0;
    for (std::size_t p = 0; p < tap_count; ++p) {
      const RingTap& t = taps[p];
      const double* q = c + t.offset;
      double v;
      if (t.exact) {
        v = *q;
      } else {
        v = t.w00 * q[0] + t.w10 * q[t.step_x] + t.w01 * q[t.step_y] +
            t.w11 * q[t.step_x + t.step_y];
      }
      if (v >= threshold) code |= 1u << p;
    }
    codes[i] = code;
  }
}

double chi_square_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = a[i] + b[i];
    if (s > 0.0) {
      const double d = a[i] - b[i];
      sum += d * d / s;
    }
  }
  return sum;
}

double l1_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double l2_squared_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double min_sum_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::min(a[i], b[i]);
  return sum;
}

constexpr KernelTable kScalar{
    "scalar",         basic_row_scalar,  ring_row_scalar, chi_square_scalar,
    l1_scalar,        l2_squared_scalar, min_sum_scalar,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace lbpkit::kernels

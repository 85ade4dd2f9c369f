// Compiled with -mavx2 only; never called unless CPUID reports AVX2.
// Operation order mirrors scalar.cpp lane by lane so the LBP kernels match
// the reference bit for bit.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "lbpkit/kernels.hpp"

namespace lbpkit::kernels {
namespace {

inline void store_codes(__m256d code, std::uint32_t* out) {
  // Codes are exact integers below 2^24.
  const __m128i ints = _mm256_cvtpd_epi32(code);
  _mm_storeu_si128(reinterpret_cast<__m128i*>(out), ints);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void basic_row_avx2(const double* above, const double* mid, const double* below,
                    std::size_t count, std::uint32_t* codes, double* contrast,
                    double* variance) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d eight = _mm256_set1_pd(8.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d n[8] = {
        _mm256_loadu_pd(above + i - 1), _mm256_loadu_pd(above + i),
        _mm256_loadu_pd(above + i + 1), _mm256_loadu_pd(mid + i + 1),
        _mm256_loadu_pd(below + i + 1), _mm256_loadu_pd(below + i),
        _mm256_loadu_pd(below + i - 1), _mm256_loadu_pd(mid + i - 1),
    };
    const __m256d c = _mm256_loadu_pd(mid + i);
    __m256d code = zero, sum1 = zero, sum0 = zero, cnt1 = zero;
    for (int k = 0; k < 8; ++k) {
      const __m256d ge = _mm256_cmp_pd(n[k], c, _CMP_GE_OQ);
      code = _mm256_add_pd(code, _mm256_and_pd(ge, _mm256_set1_pd(static_cast<double>(1u << k))));
      sum1 = _mm256_add_pd(sum1, _mm256_and_pd(ge, n[k]));
      sum0 = _mm256_add_pd(sum0, _mm256_andnot_pd(ge, n[k]));
      cnt1 = _mm256_add_pd(cnt1, _mm256_and_pd(ge, one));
    }
    store_codes(code, codes + i);
    if (contrast) {
      const __m256d cnt0 = _mm256_sub_pd(eight, cnt1);
      const __m256d c_raw =
          _mm256_sub_pd(_mm256_div_pd(sum1, cnt1), _mm256_div_pd(sum0, cnt0));
      const __m256d both = _mm256_and_pd(_mm256_cmp_pd(cnt1, zero, _CMP_GT_OQ),
                                         _mm256_cmp_pd(cnt0, zero, _CMP_GT_OQ));
      _mm256_storeu_pd(contrast + i, _mm256_and_pd(both, c_raw));
    }
    if (variance) {
      __m256d s = zero;
      for (int k = 0; k < 8; ++k) s = _mm256_add_pd(s, n[k]);
      const __m256d mean = _mm256_div_pd(s, eight);
      __m256d ss = zero;
      for (int k = 0; k < 8; ++k) {
        const __m256d d = _mm256_sub_pd(n[k], mean);
        ss = _mm256_add_pd(ss, _mm256_mul_pd(d, d));
      }
      _mm256_storeu_pd(variance + i, _mm256_div_pd(ss, eight));
    }
  }
  if (i < count) {
    scalar_table().basic_row(above + i, mid + i, below + i, count - i, codes + i,
                             contrast ? contrast + i : nullptr,
                             variance ? variance + i : nullptr);
  }
}

void ring_row_avx2(const double* center, const RingTap* taps, std::size_t tap_count,
                   std::size_t count, double eps, std::uint32_t* codes) {
  const __m256d veps = _mm256_set1_pd(eps);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const double* c = center + i;
    const __m256d threshold = _mm256_sub_pd(_mm256_loadu_pd(c), veps);
    __m256d code = _mm256_setzero_pd();
    for (std::size_t p = 0; p < tap_count; ++p) {
      const RingTap& t = taps[p];
      const double* q = c + t.offset;
      __m256d v;
      if (t.exact) {
        v = _mm256_loadu_pd(q);
      } else {
        v = _mm256_mul_pd(_mm256_set1_pd(t.w00), _mm256_loadu_pd(q));
        v = _mm256_add_pd(v, _mm256_mul_pd(_mm256_set1_pd(t.w10), _mm256_loadu_pd(q + t.step_x)));
        v = _mm256_add_pd(v, _mm256_mul_pd(_mm256_set1_pd(t.w01), _mm256_loadu_pd(q + t.step_y)));
        v = _mm256_add_pd(
            v, _mm256_mul_pd(_mm256_set1_pd(t.w11), _mm256_loadu_pd(q + t.step_x + t.step_y)));
      }
      const __m256d ge = _mm256_cmp_pd(v, threshold, _CMP_GE_OQ);
      code = _mm256_add_pd(
          code, _mm256_and_pd(ge, _mm256_set1_pd(static_cast<double>(std::uint32_t{1} << p))));
    }
    store_codes(code, codes + i);
  }
  if (i < count) scalar_table().ring_row(center + i, taps, tap_count, count - i, eps, codes + i);
}

double chi_square_avx2(const double* a, const double* b, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    const __m256d s = _mm256_add_pd(va, vb);
    const __m256d pos = _mm256_cmp_pd(s, zero, _CMP_GT_OQ);
    const __m256d d = _mm256_sub_pd(va, vb);
    const __m256d q = _mm256_div_pd(_mm256_mul_pd(d, d), _mm256_blendv_pd(one, s, pos));
    acc = _mm256_add_pd(acc, _mm256_and_pd(pos, q));
  }
  double sum = hsum(acc);
  for (; i < n; ++i) {
    const double s = a[i] + b[i];
    if (s > 0.0) sum += (a[i] - b[i]) * (a[i] - b[i]) / s;
  }
  return sum;
}

double l1_avx2(const double* a, const double* b, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, d));
  }
  double sum = hsum(acc);
  for (; i < n; ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double l2_squared_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double sum = hsum(acc);
  for (; i < n; ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return sum;
}

double min_sum_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_min_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double sum = hsum(acc);
  for (; i < n; ++i) sum += std::min(a[i], b[i]);
  return sum;
}

constexpr KernelTable kAvx2{
    "avx2",   basic_row_avx2,  ring_row_avx2, chi_square_avx2,
    l1_avx2,  l2_squared_avx2, min_sum_avx2,
};

}  // namespace

const KernelTable& avx2_table_unchecked() noexcept { return kAvx2; }

}  // namespace lbpkit::kernels

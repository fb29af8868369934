#include "lagcoh/kernels.hpp"

#include <immintrin.h>

namespace lagcoh::kernels::detail {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_squares_avx2(const double* a, std::size_t n) {
  return dot_avx2(a, a, n);
}

std::complex<double> cdot_conj_avx2(const double* ar, const double* ai,
                                    const double* br, const double* bi,
                                    std::size_t n) {
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d var = _mm256_loadu_pd(ar + i);
    __m256d vai = _mm256_loadu_pd(ai + i);
    __m256d vbr = _mm256_loadu_pd(br + i);
    __m256d vbi = _mm256_loadu_pd(bi + i);
    re = _mm256_fmadd_pd(var, vbr, re);
    re = _mm256_fmadd_pd(vai, vbi, re);
    // The imaginary term is formed per lane from two individually rounded
    // products, so ai*br - ar*bi cancels to exactly 0 when a and b coincide.
    // An FMA would keep one product unrounded and leave a rounding residue.
    __m256d tim =
        _mm256_sub_pd(_mm256_mul_pd(vai, vbr), _mm256_mul_pd(var, vbi));
    im = _mm256_add_pd(im, tim);
  }
  double sre = hsum(re), sim = hsum(im);
  for (; i < n; ++i) {
    sre += ar[i] * br[i] + ai[i] * bi[i];
    sim += ai[i] * br[i] - ar[i] * bi[i];
  }
  return {sre, sim};
}

}  // namespace lagcoh::kernels::detail

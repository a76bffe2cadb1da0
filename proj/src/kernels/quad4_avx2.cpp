#include <immintrin.h>

#include "irltrack/kernels/quad4.hpp"

namespace irltrack::kernels {

double quad_form4_avx2(const double* m, const double* v) {
  __m256d y = _mm256_mul_pd(_mm256_loadu_pd(m), _mm256_broadcast_sd(v));
  for (int j = 1; j < 4; ++j) {
    y = _mm256_add_pd(y, _mm256_mul_pd(_mm256_loadu_pd(m + 4 * j), _mm256_broadcast_sd(v + j)));
  }
  const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(v), y);
  // (p0 + p2) and (p1 + p3), then their sum.
  const __m128d lo = _mm256_castpd256_pd128(p);
  const __m128d hi = _mm256_extractf128_pd(p, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void sym_rank1_update4_avx2(double* m, const double* v, double scale) {
  const __m256d vv = _mm256_loadu_pd(v);
  __m256d c[4];
  for (int j = 0; j < 4; ++j) {
    const __m256d sj = _mm256_set1_pd(scale * v[j]);
    c[j] = _mm256_add_pd(_mm256_loadu_pd(m + 4 * j), _mm256_mul_pd(sj, vv));
  }
  // 4x4 transpose, then (M + M')/2.
  const __m256d t0 = _mm256_unpacklo_pd(c[0], c[1]);
  const __m256d t1 = _mm256_unpackhi_pd(c[0], c[1]);
  const __m256d t2 = _mm256_unpacklo_pd(c[2], c[3]);
  const __m256d t3 = _mm256_unpackhi_pd(c[2], c[3]);
  const __m256d r[4] = {
      _mm256_permute2f128_pd(t0, t2, 0x20),
      _mm256_permute2f128_pd(t1, t3, 0x20),
      _mm256_permute2f128_pd(t0, t2, 0x31),
      _mm256_permute2f128_pd(t1, t3, 0x31),
  };
  const __m256d half = _mm256_set1_pd(0.5);
  for (int j = 0; j < 4; ++j) {
    _mm256_storeu_pd(m + 4 * j, _mm256_mul_pd(_mm256_add_pd(c[j], r[j]), half));
  }
}

}  // namespace irltrack::kernels

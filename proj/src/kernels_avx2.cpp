#include <immintrin.h>

#include <cmath>

#include "kernels_detail.hpp"

// No FMA here: mul-then-add keeps axpy bit-identical to the scalar reference.

namespace densepre::kernels::avx2 {

double dot(const double* x, const double* y, idx n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  idx i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  alignas(32) double lane[4];
  __m256d acc = _mm256_add_pd(acc0, acc1);
  _mm256_store_pd(lane, acc);
  double s = ((lane[0] + lane[1]) + (lane[2] + lane[3]));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, idx n) {
  const __m256d va = _mm256_set1_pd(a);
  idx i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_add_pd(vy, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, double* x, idx n) {
  const __m256d va = _mm256_set1_pd(a);
  idx i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) x[i] *= a;
}

double inf_norm(const double* x, idx n) {
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d vm = _mm256_setzero_pd();
  idx i = 0;
  for (; i + 4 <= n; i += 4) {
    vm = _mm256_max_pd(vm, _mm256_and_pd(absmask, _mm256_loadu_pd(x + i)));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, vm);
  double m = std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
  for (; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

double one_norm(const double* x, idx n) {
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  idx i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_and_pd(absmask, _mm256_loadu_pd(x + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_and_pd(absmask, _mm256_loadu_pd(x + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_and_pd(absmask, _mm256_loadu_pd(x + i)));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, _mm256_add_pd(acc0, acc1));
  double s = ((lane[0] + lane[1]) + (lane[2] + lane[3]));
  for (; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

}  // namespace densepre::kernels::avx2

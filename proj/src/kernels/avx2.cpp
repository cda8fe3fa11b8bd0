// Built with -mavx2; only called after the dispatcher has confirmed CPU support.

#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace prouter::kernels::avx2 {

namespace {

inline __m256d abs_pd(__m256d v) noexcept {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

inline double hmax(__m256d v) noexcept {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
}

}  // namespace

double sum(std::span<const double> x) noexcept {
  const double* p = x.data();
  const std::size_t n = x.size();
  std::size_t k = 0;

  __m256d s = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();
  for (; k + 4 <= n; k += 4) {
    const __m256d v = _mm256_loadu_pd(p + k);
    const __m256d t = _mm256_add_pd(s, v);
    const __m256d big_s = _mm256_cmp_pd(abs_pd(s), abs_pd(v), _CMP_GE_OQ);
    const __m256d when_s = _mm256_add_pd(_mm256_sub_pd(s, t), v);
    const __m256d when_v = _mm256_add_pd(_mm256_sub_pd(v, t), s);
    c = _mm256_add_pd(c, _mm256_blendv_pd(when_v, when_s, big_s));
    s = t;
  }

  alignas(32) double sl[4];
  alignas(32) double cl[4];
  _mm256_store_pd(sl, s);
  _mm256_store_pd(cl, c);
  double total = 0.0;
  double comp = 0.0;
  for (int l = 0; l < 4; ++l) neumaier_add(total, comp, sl[l]);
  for (int l = 0; l < 4; ++l) neumaier_add(total, comp, cl[l]);
  for (; k < n; ++k) neumaier_add(total, comp, p[k]);
  return total + comp;
}

void multiply(const double* a, const double* b, double* out, std::size_t n) noexcept {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(out + k, _mm256_mul_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
  }
  for (; k < n; ++k) out[k] = a[k] * b[k];
}

double max_abs(std::span<const double> x) noexcept {
  const double* p = x.data();
  const std::size_t n = x.size();
  std::size_t k = 0;
  __m256d m = _mm256_setzero_pd();
  for (; k + 4 <= n; k += 4) m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(p + k)));
  double r = hmax(m);
  for (; k < n; ++k) r = std::fmax(r, std::fabs(p[k]));
  return r;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) noexcept {
  std::size_t k = 0;
  __m256d m = _mm256_setzero_pd();
  for (; k + 4 <= n; k += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    m = _mm256_max_pd(m, abs_pd(d));
  }
  double r = hmax(m);
  for (; k < n; ++k) r = std::fmax(r, std::fabs(a[k] - b[k]));
  return r;
}

}  // namespace prouter::kernels::avx2

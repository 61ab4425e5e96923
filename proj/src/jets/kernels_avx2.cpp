// AVX2+FMA variants of the jet coefficient kernels.  The elementwise passes
// are vectorized; the irregular cross-term accumulation stays scalar fma in
// table order, so results are bit-identical to the scalar backend.
#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "kv/jets/kernels.hpp"

namespace kv::jets::kernels {

namespace {

void add_avx2(double* c, const double* a, const double* b, int n) {
  int k = 0;
  for (; k + 4 <= n; k += 4)
    _mm256_storeu_pd(c + k, _mm256_add_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
  for (; k < n; ++k) c[k] = a[k] + b[k];
}

void sub_avx2(double* c, const double* a, const double* b, int n) {
  int k = 0;
  for (; k + 4 <= n; k += 4)
    _mm256_storeu_pd(c + k, _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
  for (; k < n; ++k) c[k] = a[k] - b[k];
}

void scale_avx2(double* c, const double* a, double s, int n) {
  const __m256d vs = _mm256_set1_pd(s);
  int k = 0;
  for (; k + 4 <= n; k += 4) _mm256_storeu_pd(c + k, _mm256_mul_pd(vs, _mm256_loadu_pd(a + k)));
  for (; k < n; ++k) c[k] = s * a[k];
}

void axpy_avx2(double* c, const double* a, double s, int n) {
  const __m256d vs = _mm256_set1_pd(s);
  int k = 0;
  for (; k + 4 <= n; k += 4)
    _mm256_storeu_pd(c + k, _mm256_fmadd_pd(vs, _mm256_loadu_pd(a + k), _mm256_loadu_pd(c + k)));
  for (; k < n; ++k) c[k] = std::fma(s, a[k], c[k]);
}

void mul_avx2(double* c, const double* a, const double* b, const Layout& L) {
  const int n = L.count;
  const __m256d va0 = _mm256_set1_pd(a[0]);
  int k = 0;
  for (; k + 4 <= n; k += 4) _mm256_storeu_pd(c + k, _mm256_mul_pd(va0, _mm256_loadu_pd(b + k)));
  for (; k < n; ++k) c[k] = a[0] * b[k];

  const __m256d vb0 = _mm256_set1_pd(b[0]);
  k = 1;
  for (; k + 4 <= n; k += 4)
    _mm256_storeu_pd(c + k, _mm256_fmadd_pd(vb0, _mm256_loadu_pd(a + k), _mm256_loadu_pd(c + k)));
  for (; k < n; ++k) c[k] = std::fma(b[0], a[k], c[k]);

  for (k = 0; k < n; ++k) {
    double acc = c[k];
    const std::uint32_t end = L.cross_begin[k + 1];
    for (std::uint32_t p = L.cross_begin[k]; p < end; ++p)
      acc = std::fma(a[L.cross[p].i], b[L.cross[p].j], acc);
    c[k] = acc;
  }
}

}  // namespace

bool avx2_available() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const Backend& avx2_backend() {
  static const Backend b{"avx2", add_avx2, sub_avx2, scale_avx2, axpy_avx2, mul_avx2};
  return b;
}

}  // namespace kv::jets::kernels

#else

#include "kv/jets/kernels.hpp"

namespace kv::jets::kernels {

bool avx2_available() { return false; }

const Backend& avx2_backend() { return scalar_backend(); }

}  // namespace kv::jets::kernels

#endif

#include <cmath>

#include "kv/jets/kernels.hpp"

namespace kv::jets::kernels {

namespace {

void add_scalar(double* c, const double* a, const double* b, int n) {
  for (int k = 0; k < n; ++k) c[k] = a[k] + b[k];
}

void sub_scalar(double* c, const double* a, const double* b, int n) {
  for (int k = 0; k < n; ++k) c[k] = a[k] - b[k];
}

void scale_scalar(double* c, const double* a, double s, int n) {
  for (int k = 0; k < n; ++k) c[k] = s * a[k];
}

void axpy_scalar(double* c, const double* a, double s, int n) {
  for (int k = 0; k < n; ++k) c[k] = std::fma(s, a[k], c[k]);
}

void mul_scalar(double* c, const double* a, const double* b, const Layout& L) {
  const double a0 = a[0];
  const double b0 = b[0];
  const int n = L.count;
  for (int k = 0; k < n; ++k) c[k] = a0 * b[k];
  for (int k = 1; k < n; ++k) c[k] = std::fma(b0, a[k], c[k]);
  for (int k = 0; k < n; ++k) {
    double acc = c[k];
    const std::uint32_t end = L.cross_begin[k + 1];
    for (std::uint32_t p = L.cross_begin[k]; p < end; ++p)
      acc = std::fma(a[L.cross[p].i], b[L.cross[p].j], acc);
    c[k] = acc;
  }
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend b{"scalar", add_scalar, sub_scalar, scale_scalar, axpy_scalar, mul_scalar};
  return b;
}

}  // namespace kv::jets::kernels

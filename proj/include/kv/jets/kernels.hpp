#pragma once

#include <string_view>

#include "kv/jets/layout.hpp"

namespace kv::jets::kernels {

// Coefficient-array kernels behind jet arithmetic.  The scalar backend is the
// reference; SIMD variants must produce bit-identical results (every
// accumulation uses fused multiply-add in the same per-slot order).
struct Backend {
  const char* name;
  void (*add)(double* c, const double* a, const double* b, int n);
  void (*sub)(double* c, const double* a, const double* b, int n);
  void (*scale)(double* c, const double* a, double s, int n);   // c = s*a
  void (*axpy)(double* c, const double* a, double s, int n);    // c += s*a (fused)
  // truncated product: c = a*b to the layout's order; c must not alias a or b
  void (*mul)(double* c, const double* a, const double* b, const Layout& L);
};

const Backend& scalar_backend();
bool avx2_available();
const Backend& avx2_backend();  // valid only if avx2_available()

// Dispatched once at first use; honors KV_KERNELS=scalar|avx2 in the
// environment.  set_active overrides it (tests); returns false if the
// requested backend is unavailable on this host.
const Backend& active();
bool set_active(std::string_view name);

}  // namespace kv::jets::kernels

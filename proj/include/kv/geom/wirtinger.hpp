#pragma once

#include <array>
#include <complex>

#include "kv/tensor/forms.hpp"

namespace kv::geom {

// Complex-coefficient view of objects on a 4-real-dim chart whose coordinates
// pair as z = x0 + i x1, u = x2 + i x3.  Convention: dz ^ dzbar = -2i dx0 ^ dx1.

// Coefficients of a real 2-form on the basis {dz^dzb, dz^dub, du^dzb, du^dub};
// offdiag is the norm of the (2,0)+(0,2) leftover (dz^du and dzb^dub parts).
struct ComplexCoeffs2 {
  std::complex<double> zz, zu, uz, uu;
  double offdiag = 0;
};

ComplexCoeffs2 complex_coefficients(const tensor::FormValue& real2form);

// Mixed Hessian H[a][b] = d^2 f / dz^a dzbar^b from order-2 real jets
// (Wirtinger operators d/dz = (d/dx - i d/dy)/2).
std::array<std::array<std::complex<double>, 2>, 2> del_delbar(const dsl::Expr& f,
                                                              const dsl::ChartSpec& chart,
                                                              std::span<const double> point);

}  // namespace kv::geom

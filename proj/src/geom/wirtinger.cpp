#include "kv/geom/wirtinger.hpp"

#include <cmath>

#include "kv/error.hpp"

namespace kv::geom {

ComplexCoeffs2 complex_coefficients(const tensor::FormValue& f) {
  if (f.dim != 4 || f.degree != 2) throw contract_error("complex_coefficients needs a 2-form on a 4-dim chart");
  using C = std::complex<double>;
  const C i(0, 1);
  // dx^a = sum_b T[a][b] * beta_b, beta = (dz, dzbar, du, dubar)
  const C T[4][4] = {
      {0.5, 0.5, 0, 0},
      {-0.5 * i, 0.5 * i, 0, 0},
      {0, 0, 0.5, 0.5},
      {0, 0, -0.5 * i, 0.5 * i},
  };
  C coef[4][4] = {};
  const auto& ts = tensor::FormValue::tuples(4, 2);
  for (size_t c = 0; c < ts.size(); ++c) {
    const int a = ts[c][0], b = ts[c][1];
    const double val = f.comps[c].value();
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) coef[p][q] += val * (T[a][p] * T[b][q] - T[a][q] * T[b][p]);
  }
  ComplexCoeffs2 out;
  out.zz = coef[0][1];
  out.zu = coef[0][3];        // dz ^ dubar
  out.uz = -coef[1][2];       // du ^ dzbar = -(dzbar ^ du)
  out.uu = coef[2][3];
  out.offdiag = std::sqrt(std::norm(coef[0][2]) + std::norm(coef[1][3]));
  return out;
}

std::array<std::array<std::complex<double>, 2>, 2> del_delbar(const dsl::Expr& f,
                                                              const dsl::ChartSpec& chart,
                                                              std::span<const double> point) {
  if (chart.dim() != 4) throw contract_error("del_delbar needs a 4-dim chart (two complex pairs)");
  const jets::Jet j = dsl::eval_expr(f, chart, point, 2);
  std::array<std::array<std::complex<double>, 2>, 2> H;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const int xa = 2 * a, ya = 2 * a + 1, xb = 2 * b, yb = 2 * b + 1;
      const double re = 0.25 * (j.second_partial(xa, xb) + j.second_partial(ya, yb));
      const double im = 0.25 * (j.second_partial(xa, yb) - j.second_partial(ya, xb));
      H[a][b] = {re, im};
    }
  return H;
}

}  // namespace kv::geom

#include "kv/geom/lee.hpp"

#include <cmath>

#include "kv/error.hpp"
#include "kv/tensor/linalg.hpp"

namespace kv::geom {

namespace {

// linear map theta (4 coefficients) -> theta ^ omega (four 3-form components)
// at value level; columns of the system matrix
struct WedgeSystem {
  std::array<std::array<double, 4>, 4> M{};  // [row: 3-form comp][col: theta coeff]
  std::array<double, 4> rhs{};               // d(omega) components
  double rhs_norm = 0;
};

WedgeSystem build(const tensor::FormValue& omega) {
  if (omega.dim != 4 || omega.degree != 2) throw contract_error("lee/calabi solve needs a 2-form on a 4-dim chart");
  WedgeSystem sys;
  const tensor::FormValue dom = tensor::exterior_derivative(omega);
  const auto& t3 = tensor::FormValue::tuples(4, 3);
  for (size_t r = 0; r < t3.size(); ++r) {
    sys.rhs[r] = dom.comps[r].value();
    sys.rhs_norm += sys.rhs[r] * sys.rhs[r];
    const auto& t = t3[r];
    // (theta ^ omega)_{abc} = theta_a w_bc - theta_b w_ac + theta_c w_ab
    const double wbc = omega.value({t[1], t[2], -1, -1});
    const double wac = omega.value({t[0], t[2], -1, -1});
    const double wab = omega.value({t[0], t[1], -1, -1});
    sys.M[r][t[0]] += wbc;
    sys.M[r][t[1]] -= wac;
    sys.M[r][t[2]] += wab;
  }
  sys.rhs_norm = std::sqrt(sys.rhs_norm);
  return sys;
}

OneFormFit solve(const WedgeSystem& sys, double scale) {
  // normal equations (scale*M)^T (scale*M) x = (scale*M)^T rhs
  std::array<std::array<double, 4>, 4> A{};
  std::array<double, 4> b{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      for (int r = 0; r < 4; ++r) A[i][j] += scale * sys.M[r][i] * scale * sys.M[r][j];
    }
  for (int i = 0; i < 4; ++i)
    for (int r = 0; r < 4; ++r) b[i] += scale * sys.M[r][i] * sys.rhs[r];

  const tensor::LsqSolution ls = tensor::solve_spd4(A, b);
  OneFormFit fit;
  fit.coeff = ls.x;
  fit.rank_deficient = ls.rank_deficient;
  double res2 = 0;
  for (int r = 0; r < 4; ++r) {
    double lhs = 0;
    for (int c = 0; c < 4; ++c) lhs += scale * sys.M[r][c] * fit.coeff[c];
    res2 += (lhs - sys.rhs[r]) * (lhs - sys.rhs[r]);
  }
  fit.residual = std::sqrt(res2) / (1.0 + sys.rhs_norm);
  return fit;
}

}  // namespace

OneFormFit lee_form_solve(const tensor::FormValue& omega) {
  return solve(build(omega), 2.0);
}

CalabiFit calabi_residual(const tensor::FormValue& omega_J, const tensor::FormValue& omega_I,
                          CalabiSign sign) {
  const tensor::FormValue psi = sign == CalabiSign::Plus ? tensor::form_add(omega_J, omega_I)
                                                         : tensor::form_sub(omega_J, omega_I);
  CalabiFit fit;
  const double scale_in = tensor::frob_value(omega_J) + tensor::frob_value(omega_I);
  if (tensor::frob_value(psi) < 1e-12 * (1.0 + scale_in)) {
    fit.degenerate = true;
    return fit;
  }
  static_cast<OneFormFit&>(fit) = solve(build(psi), 1.0);
  return fit;
}

double wedge_identity_residual(const tensor::FormValue& omega, const std::array<double, 4>& phi,
                               double scale) {
  const WedgeSystem sys = build(omega);
  double res2 = 0;
  for (int r = 0; r < 4; ++r) {
    double lhs = 0;
    for (int c = 0; c < 4; ++c) lhs += scale * sys.M[r][c] * phi[c];
    res2 += (lhs - sys.rhs[r]) * (lhs - sys.rhs[r]);
  }
  return std::sqrt(res2) / (1.0 + sys.rhs_norm);
}

}  // namespace kv::geom

#include "kv/geom/qch.hpp"

#include <cmath>

#include "kv/error.hpp"

namespace kv::geom {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double holomorphic_sectional_curvature(const tensor::CurvaturePack& pack, const Endo& J,
                                       std::span<const double> X) {
  const double nx = pack.inner(X, X);
  if (!(nx > 0)) throw contract_error("holomorphic sectional curvature of a null vector");
  const auto JX = J.apply(X);
  return pack.rm(X, JX, X, JX) / (nx * nx);
}

double qch_residual(const tensor::CurvaturePack& pack, const Endo& J, std::span<const double> d1,
                    std::span<const double> d2, int n_samples, std::mt19937_64& rng) {
  const int n = pack.dim;
  if (n != 4) throw contract_error("qch_residual is defined for 4-dim charts");

  const auto dot = [&](std::span<const double> a, std::span<const double> b) { return pack.inner(a, b); };
  const auto normalize = [&](std::array<double, 4>& v) {
    const double nn = dot(v, v);
    if (!(nn > 1e-20)) throw contract_error("qch_residual: degenerate distribution");
    for (auto& x : v) x /= std::sqrt(nn);
  };

  // orthonormal basis of D
  std::array<double, 4> e1{}, e2{};
  for (int i = 0; i < 4; ++i) e1[i] = d1[i];
  normalize(e1);
  for (int i = 0; i < 4; ++i) e2[i] = d2[i];
  const double pr = dot(e2, e1);
  for (int i = 0; i < 4; ++i) e2[i] -= pr * e1[i];
  // Gram determinant guard
  {
    double g11 = dot(d1, d1), g22 = dot(d2, d2), g12 = dot(d1, d2);
    if (g11 * g22 - g12 * g12 < 1e-10 * (1 + g11) * (1 + g22))
      throw contract_error("qch_residual: spanning vectors nearly dependent");
  }
  normalize(e2);

  // J-invariance of the span
  {
    const auto check_in_span = [&](const std::array<double, 4>& v) {
      std::array<double, 4> res = v;
      const double c1 = dot(res, e1), c2 = dot(res, e2);
      for (int i = 0; i < 4; ++i) res[i] -= c1 * e1[i] + c2 * e2[i];
      return std::sqrt(dot(res, res));
    };
    const double sc = 1.0 + tensor::frob(J.values());
    if (check_in_span(J.apply(e1)) > 1e-10 * sc || check_in_span(J.apply(e2)) > 1e-10 * sc)
      throw contract_error("qch_residual: distribution is not J-invariant");
  }

  // orthonormal basis of the complement
  std::array<std::array<double, 4>, 2> p{};
  int found = 0;
  for (int c = 0; c < 4 && found < 2; ++c) {
    std::array<double, 4> v{};
    v[c] = 1.0;
    double c1 = dot(v, e1), c2 = dot(v, e2);
    for (int i = 0; i < 4; ++i) v[i] -= c1 * e1[i] + c2 * e2[i];
    for (int b = 0; b < found; ++b) {
      const double cb = dot(v, p[b]);
      for (int i = 0; i < 4; ++i) v[i] -= cb * p[b][i];
    }
    if (dot(v, v) > 1e-8) {
      normalize(v);
      p[found++] = v;
    }
  }
  if (found < 2) throw contract_error("qch_residual: could not complete the complement basis");

  double worst = 0;
  for (int s = 0; s < n_samples; ++s) {
    const double mu = 0.1 + 0.8 * uniform01(rng);  // |X_D| away from 0 and 1
    const double cm = std::cos(mu * M_PI / 2), sm = std::sin(mu * M_PI / 2);
    const auto sample_vec = [&]() {
      const double a = 2 * M_PI * uniform01(rng);
      const double b = 2 * M_PI * uniform01(rng);
      std::array<double, 4> X{};
      for (int i = 0; i < 4; ++i)
        X[i] = cm * (std::cos(a) * e1[i] + std::sin(a) * e2[i]) +
               sm * (std::cos(b) * p[0][i] + std::sin(b) * p[1][i]);
      return X;
    };
    const auto X = sample_vec();
    const auto Y = sample_vec();
    const double kx = holomorphic_sectional_curvature(pack, J, X);
    const double ky = holomorphic_sectional_curvature(pack, J, Y);
    const double resid = std::abs(kx - ky) / (1.0 + 0.5 * (std::abs(kx) + std::abs(ky)));
    worst = std::max(worst, resid);
  }
  return worst;
}

double gray2_residual(const tensor::CurvaturePack& pack, const Endo& I, int n_frames,
                      std::mt19937_64& rng) {
  const int n = pack.dim;
  const double scale = 1.0 + pack.riemann_frob();
  double worst = 0;
  for (int f = 0; f < n_frames; ++f) {
    std::array<std::array<double, 4>, 4> v{};
    for (int a = 0; a < 4; ++a) {
      for (int i = 0; i < n; ++i) v[a][i] = 2 * uniform01(rng) - 1;
      const double nn = pack.inner(v[a], v[a]);
      for (int i = 0; i < n; ++i) v[a][i] /= std::sqrt(nn);
    }
    const auto IX = I.apply(v[0]);
    const auto IY = I.apply(v[1]);
    const auto IZ = I.apply(v[2]);
    const auto IW = I.apply(v[3]);
    const double lhs = pack.rm(v[0], v[1], v[2], v[3]) - pack.rm(IX, IY, v[2], v[3]);
    const double rhs = pack.rm(IX, v[1], IZ, v[3]) + pack.rm(IX, v[1], v[2], IW);
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

tensor::DMat ricci_form(const tensor::CurvaturePack& pack, const Endo& J) {
  const int n = pack.dim;
  tensor::DMat rho;
  rho.dim = n;
  const tensor::DMat Jv = J.values();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += Jv(k, i) * pack.ricci(k, j);
      rho(i, j) = s;
    }
  return rho;
}

RicciFormChecks ricci_form_checks(const tensor::CurvaturePack& pack, const Endo& J, const Endo& I,
                                  const tensor::FormValue& omega_I) {
  RicciFormChecks out;
  const int n = pack.dim;
  if (tensor::frob(pack.ricci) < 1e-9 * (1.0 + pack.riemann_frob())) {
    out.vacuous = true;
    return out;
  }
  const tensor::DMat rho = ricci_form(pack, J);
  const tensor::DMat Iv = I.values();
  const double rho_norm = tensor::frob(rho);

  tensor::DMat pulled;
  pulled.dim = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s += rho(k, l) * Iv(k, i) * Iv(l, j);
      pulled(i, j) = s;
    }
  double inv2 = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv2 += (pulled(i, j) - rho(i, j)) * (pulled(i, j) - rho(i, j));
  out.inv_residual = std::sqrt(inv2) / (1.0 + rho_norm);

  tensor::DMat om;
  om.dim = n;
  for (size_t c = 0; c < omega_I.comps.size(); ++c) {
    const auto& t = tensor::FormValue::tuples(n, 2)[c];
    om(t[0], t[1]) = omega_I.comps[c].value();
    om(t[1], t[0]) = -omega_I.comps[c].value();
  }
  double num = 0, den = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      num += rho(i, j) * om(i, j);
      den += om(i, j) * om(i, j);
    }
  out.lambda = den > 0 ? num / den : 0.0;
  double prop2 = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double d = rho(i, j) - out.lambda * om(i, j);
      prop2 += d * d;
    }
  out.prop_residual = std::sqrt(prop2) / (1.0 + rho_norm);
  return out;
}

}  // namespace kv::geom

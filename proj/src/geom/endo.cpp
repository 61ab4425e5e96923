#include "kv/geom/endo.hpp"

#include <cmath>

#include "kv/error.hpp"

namespace kv::geom {

tensor::DMat Endo::values() const {
  tensor::DMat v;
  v.dim = dim;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) v(i, j) = at(i, j).value();
  return v;
}

std::array<double, 4> Endo::apply(std::span<const double> v) const {
  std::array<double, 4> out{};
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out[i] += at(i, j).value() * v[j];
  return out;
}

Endo endo_from_form(const tensor::JetMatrix& g_inv, const tensor::FormValue& omega) {
  if (omega.degree != 2 || omega.dim != g_inv.dim) throw contract_error("endo_from_form needs a 2-form of matching dimension");
  const int n = g_inv.dim;
  const int order = std::min(g_inv.at(0, 0).order(), omega.order());

  // omega as a full antisymmetric jet matrix
  std::array<jets::Jet, 16> om;
  const int nv = omega.comps[0].nvars();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) om[i * n + j] = jets::Jet::constant(0.0, nv, order);
  for (size_t c = 0; c < omega.comps.size(); ++c) {
    const auto& t = tensor::FormValue::tuples(n, 2)[c];
    om[t[0] * n + t[1]] = omega.comps[c].truncated(order);
    om[t[1] * n + t[0]] = -omega.comps[c].truncated(order);
  }

  // degeneracy guard on the value part
  {
    tensor::DMat ov;
    ov.dim = n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ov(i, j) = om[i * n + j].value();
    // det via LU on a copy
    double det = 1.0;
    auto a = ov.a;
    for (int c = 0; c < n; ++c) {
      int piv = c;
      for (int r = c + 1; r < n; ++r)
        if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
      if (a[piv][c] == 0.0) {
        det = 0.0;
        break;
      }
      if (piv != c) {
        std::swap(a[piv], a[c]);
        det = -det;
      }
      det *= a[c][c];
      for (int r = c + 1; r < n; ++r) {
        const double f = a[r][c] / a[c][c];
        for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      }
    }
    if (std::abs(det) < 1e-14) throw contract_error("endo_from_form: degenerate 2-form");
  }

  Endo J;
  J.dim = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      jets::Jet s = jets::Jet::constant(0.0, nv, order);
      for (int k = 0; k < n; ++k) s += g_inv.at(i, k).truncated(order) * om[k * n + j];
      J.at(i, j) = s;
    }
  return J;
}

double almost_complex_residual(const Endo& J) {
  const tensor::DMat v = J.values();
  tensor::DMat sq = tensor::matmul(v, v);
  for (int i = 0; i < J.dim; ++i) sq(i, i) += 1.0;
  return tensor::frob(sq) / (1.0 + tensor::frob(v) * tensor::frob(v));
}

double compat_residual(const tensor::DMat& g, const Endo& J) {
  const tensor::DMat v = J.values();
  tensor::DMat jt;
  jt.dim = J.dim;
  for (int i = 0; i < J.dim; ++i)
    for (int j = 0; j < J.dim; ++j) jt(i, j) = v(j, i);
  tensor::DMat r = tensor::matmul(jt, tensor::matmul(g, v));
  for (int i = 0; i < J.dim; ++i)
    for (int j = 0; j < J.dim; ++j) r(i, j) -= g(i, j);
  return tensor::frob(r) / (1.0 + tensor::frob(g));
}

double nijenhuis_residual(const Endo& J) {
  const int n = J.dim;
  double scale = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(J.at(i, j).value()));
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double norm2 = 0;
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int m = 0; m < n; ++m) {
          s += J.at(m, i).value() * J.at(k, j).partial(m);
          s -= J.at(m, j).value() * J.at(k, i).partial(m);
          s -= J.at(k, m).value() * J.at(m, j).partial(i);
          s += J.at(k, m).value() * J.at(m, i).partial(j);
        }
        norm2 += s * s;
      }
      worst = std::max(worst, std::sqrt(norm2));
    }
  }
  return worst / (1.0 + scale * scale);
}

Endo opposite_structure(const Endo& J, std::span<const double> d1, std::span<const double> d2,
                        const tensor::DMat& g) {
  const int n = J.dim;
  // orthonormalize the plane
  std::array<std::array<double, 4>, 2> e{};
  std::array<double, 4> v{};
  const auto dot = [&](std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += g(i, j) * a[i] * b[j];
    return s;
  };
  const double n1 = dot(d1, d1);
  if (!(n1 > 0)) throw contract_error("opposite_structure: degenerate distribution");
  for (int i = 0; i < n; ++i) e[0][i] = d1[i] / std::sqrt(n1);
  for (int i = 0; i < n; ++i) v[i] = d2[i];
  const double pr = dot(v, e[0]);
  for (int i = 0; i < n; ++i) v[i] -= pr * e[0][i];
  const double n2 = dot(v, v);
  if (!(n2 > 1e-10 * (1 + dot(d2, d2)))) throw contract_error("opposite_structure: degenerate distribution");
  for (int i = 0; i < n; ++i) e[1][i] = v[i] / std::sqrt(n2);

  // projector P^i_j = sum_a e_a^i (g e_a)_j ; I = J (2P - Id)
  tensor::DMat P;
  P.dim = n;
  for (int a = 0; a < 2; ++a) {
    std::array<double, 4> flat{};
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) flat[j] += g(j, k) * e[a][k];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) P(i, j) += e[a][i] * flat[j];
  }
  tensor::DMat two_p_minus_id = P;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) two_p_minus_id(i, j) = 2 * P(i, j) - (i == j ? 1.0 : 0.0);
  const tensor::DMat I = tensor::matmul(J.values(), two_p_minus_id);

  Endo out;
  out.dim = n;
  const int nv = J.at(0, 0).nvars();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = jets::Jet::constant(I(i, j), nv, 1);
  return out;
}

}  // namespace kv::geom

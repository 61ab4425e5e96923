#include "kv/tensor/curvature.hpp"

#include <cmath>

#include "kv/error.hpp"

namespace kv::tensor {

DMat JetMatrix::values() const {
  DMat v;
  v.dim = dim;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) v(i, j) = at(i, j).value();
  return v;
}

namespace {

bool cholesky_spd(const DMat& g) {
  DMat L;
  L.dim = g.dim;
  for (int i = 0; i < g.dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = g(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      if (i == j) {
        if (!(s > 0)) return false;
        L(i, i) = std::sqrt(s);
      } else {
        L(i, j) = s / L(j, j);
      }
    }
  }
  return true;
}

}  // namespace

JetMatrix metric_jets(const dsl::ChartSpec& chart, std::span<const double> point, int order) {
  if (!dsl::in_domain(chart, point)) throw domain_error("point violates chart domain constraints");
  const dsl::EvalContext ctx = dsl::make_context(chart, point, order);
  JetMatrix G;
  G.dim = chart.dim();
  for (int i = 0; i < G.dim; ++i)
    for (int j = i; j < G.dim; ++j) {
      G.at(i, j) = dsl::eval(chart.metric_at(i, j), ctx);
      if (i != j) G.at(j, i) = G.at(i, j);
    }
  if (!cholesky_spd(G.values()))
    throw domain_error("metric value part is not positive definite at the sampled point");
  return G;
}

JetMatrix invert_jet_matrix(const JetMatrix& m) {
  const int n = m.dim;
  const int nv = m.at(0, 0).nvars();
  const int order = m.at(0, 0).order();
  // Gauss-Jordan in the jet ring, pivoting on value magnitude
  std::array<jets::Jet, 32> work;  // [A | I] rows of 2n
  const auto W = [&](int i, int j) -> jets::Jet& { return work[i * 2 * n + j]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      W(i, j) = m.at(i, j);
      W(i, n + j) = jets::Jet::constant(i == j ? 1.0 : 0.0, nv, order);
    }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(W(r, col).value()) > std::abs(W(piv, col).value())) piv = r;
    if (W(piv, col).value() == 0.0)
      throw singular_evaluation("invert_jet_matrix: singular value part");
    if (piv != col)
      for (int j = 0; j < 2 * n; ++j) std::swap(W(piv, j), W(col, j));
    const jets::Jet inv_piv = 1.0 / W(col, col);
    for (int j = 0; j < 2 * n; ++j) W(col, j) = W(col, j) * inv_piv;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const jets::Jet factor = W(r, col);
      if (factor.value() == 0.0) {
        bool all_zero = true;
        for (double c : factor.coeffs())
          if (c != 0.0) all_zero = false;
        if (all_zero) continue;
      }
      for (int j = 0; j < 2 * n; ++j) W(r, j) -= factor * W(col, j);
    }
  }
  JetMatrix out;
  out.dim = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = W(i, n + j);
  return out;
}

ChristoffelJets christoffel(const JetMatrix& gjets, const JetMatrix& g_inv) {
  const int n = gjets.dim;
  const int order = gjets.at(0, 0).order();
  if (order < 2) throw contract_error("christoffel requires metric jets of order >= 2");
  const int og = order - 1;

  // first partials of g as order-1-lower jets
  std::array<jets::Jet, 64> dg;  // [i][j][k] = d_k g_ij
  const auto DG = [&](int i, int j, int k) -> jets::Jet& { return dg[(i * n + j) * n + k]; };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        DG(i, j, k) = gjets.at(i, j).partial_jet(k);
        if (i != j) DG(j, i, k) = DG(i, j, k);
      }

  JetMatrix ginv_low;
  ginv_low.dim = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ginv_low.at(i, j) = g_inv.at(i, j).truncated(og);

  ChristoffelJets gam;
  gam.dim = n;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        jets::Jet s = jets::Jet::constant(0.0, gjets.at(0, 0).nvars(), og);
        for (int l = 0; l < n; ++l)
          s += ginv_low.at(k, l) * (DG(j, l, i) + DG(i, l, j) - DG(i, j, l));
        s *= 0.5;
        gam.at(k, i, j) = s;
        if (i != j) gam.at(k, j, i) = s;
      }
  return gam;
}

namespace {

CurvaturePack pack_from_jets(const JetMatrix& G) {
  const int n = G.dim;
  const JetMatrix Ginv = invert_jet_matrix(G);
  const ChristoffelJets gam = christoffel(G, Ginv);

  CurvaturePack p;
  p.dim = n;
  p.g = G.values();
  p.g_inv = Ginv.values();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p.gamma[k][i][j] = gam.at(k, i, j).value();

  Tensor4 dgam{};  // [k][i][j][m] = d_m Gamma^k_ij
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m) dgam[k][i][j][m] = gam.at(k, i, j).partial(m);

  // R(e_k, e_l) e_j = Rup[i][j][k][l] e_i
  Tensor4 rup{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = dgam[i][l][j][k] - dgam[i][k][j][l];
          for (int m = 0; m < n; ++m)
            s += p.gamma[i][k][m] * p.gamma[m][l][j] - p.gamma[i][l][m] * p.gamma[m][k][j];
          rup[i][j][k][l] = s;
        }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int m = 0; m < n; ++m) s += p.g(m, k) * rup[m][l][i][j];
          p.riemann_low[i][j][k][l] = s;
        }

  p.ricci.dim = n;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double s = 0;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) s += p.g_inv(i, k) * p.riemann_low[i][j][k][l];
      p.ricci(j, l) = s;
    }
  p.scalar = 0;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) p.scalar += p.g_inv(j, l) * p.ricci(j, l);

  if (n == 4) {
    DMat E;  // trace-free Ricci
    E.dim = 4;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) E(i, j) = p.ricci(i, j) - 0.25 * p.scalar * p.g(i, j);
    const auto KN = [](const DMat& A, const DMat& B, int i, int j, int k, int l) {
      return A(i, k) * B(j, l) - A(i, l) * B(j, k) + A(j, l) * B(i, k) - A(j, k) * B(i, l);
    };
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l)
            p.weyl_low[i][j][k][l] = p.riemann_low[i][j][k][l] - 0.5 * KN(E, p.g, i, j, k, l) -
                                     p.scalar / 24.0 * KN(p.g, p.g, i, j, k, l);

    // g-orthonormal frame from the coordinate vectors in declaration order
    std::array<std::array<double, 4>, 4> frame{};
    for (int a = 0; a < 4; ++a) {
      std::array<double, 4> v{};
      v[a] = 1.0;
      for (int b = 0; b < a; ++b) {
        double dot = 0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) dot += p.g(i, j) * v[i] * frame[b][j];
        for (int i = 0; i < 4; ++i) v[i] -= dot * frame[b][i];
      }
      double nn = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) nn += p.g(i, j) * v[i] * v[j];
      if (!(nn > 0)) throw domain_error("metric not positive definite in Gram-Schmidt");
      const double inv = 1.0 / std::sqrt(nn);
      for (int i = 0; i < 4; ++i) frame[a][i] = v[i] * inv;
    }

    // Weyl in frame components
    Tensor4 wf{};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            double s = 0;
            for (int i = 0; i < 4; ++i)
              for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                  for (int l = 0; l < 4; ++l)
                    s += p.weyl_low[i][j][k][l] * frame[a][i] * frame[b][j] * frame[c][k] * frame[d][l];
            wf[a][b][c][d] = s;
          }

    // anti-self-dual basis {e01 - e23, e02 - e31, e03 - e12}
    const int pr[3][4] = {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
    std::array<std::array<double, 3>, 3> M{};
    for (int m = 0; m < 3; ++m)
      for (int nn2 = 0; nn2 < 3; ++nn2)
        M[m][nn2] = 0.5 * (wf[pr[m][0]][pr[m][1]][pr[nn2][0]][pr[nn2][1]] -
                           wf[pr[m][0]][pr[m][1]][pr[nn2][2]][pr[nn2][3]] -
                           wf[pr[m][2]][pr[m][3]][pr[nn2][0]][pr[nn2][1]] +
                           wf[pr[m][2]][pr[m][3]][pr[nn2][2]][pr[nn2][3]]);
    p.asd_eigenvalues = sym_eigenvalues<3>(M);
    p.has_asd = true;
  }
  return p;
}

}  // namespace

CurvaturePack curvature_pack(const dsl::ChartSpec& chart, std::span<const double> point, int order) {
  if (order < 2) throw contract_error("curvature_pack requires order >= 2");
  return pack_from_jets(metric_jets(chart, point, order));
}

CurvaturePack curvature_pack(const MetricFn& metric, int dim, std::span<const double> point) {
  JetMatrix G = metric(point, 2);
  if (G.dim != dim) throw contract_error("metric field dimension mismatch");
  return pack_from_jets(G);
}

double CurvaturePack::rm(std::span<const double> X, std::span<const double> Y,
                         std::span<const double> Z, std::span<const double> W) const {
  double s = 0;
  for (int i = 0; i < dim; ++i) {
    if (X[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (Y[j] == 0) continue;
      double inner2 = 0;
      for (int k = 0; k < dim; ++k) {
        if (Z[k] == 0) continue;
        for (int l = 0; l < dim; ++l) inner2 += riemann_low[i][j][k][l] * Z[k] * W[l];
      }
      s += X[i] * Y[j] * inner2;
    }
  }
  return s;
}

double CurvaturePack::riemann_frob() const {
  double s = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) s += riemann_low[i][j][k][l] * riemann_low[i][j][k][l];
  return std::sqrt(s);
}

double CurvaturePack::inner(std::span<const double> X, std::span<const double> Y) const {
  double s = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) s += g(i, j) * X[i] * Y[j];
  return s;
}

LsqSolution solve_spd4(const std::array<std::array<double, 4>, 4>& A, const std::array<double, 4>& b) {
  // eigen pseudo-inverse, rank threshold relative to the largest eigenvalue
  auto evs = sym_eigenvalues<4>(A);
  const double emax = std::max(std::abs(evs[0]), std::abs(evs[3]));
  const double thresh = emax * 1e-12;

  // recompute eigenvectors by inverse iteration is overkill; do full Jacobi
  // with vectors instead
  std::array<std::array<double, 4>, 4> m = A;
  std::array<std::array<double, 4>, 4> V{};
  for (int i = 0; i < 4; ++i) V[i][i] = 1.0;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off += m[p][q] * m[p][q];
    if (off < 1e-300) break;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        if (m[p][q] == 0.0) continue;
        const double theta = (m[q][q] - m[p][p]) / (2 * m[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1.0 / std::sqrt(t * t + 1);
        const double s = t * c;
        for (int k = 0; k < 4; ++k) {
          const double mkp = m[k][p], mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (int k = 0; k < 4; ++k) {
          const double mpk = m[p][k], mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
        for (int k = 0; k < 4; ++k) {
          const double vkp = V[k][p], vkq = V[k][q];
          V[k][p] = c * vkp - s * vkq;
          V[k][q] = s * vkp + c * vkq;
        }
      }
  }
  LsqSolution sol;
  for (int e = 0; e < 4; ++e) {
    const double lam = m[e][e];
    if (std::abs(lam) <= thresh || emax == 0.0) {
      sol.rank_deficient = true;
      continue;
    }
    double vb = 0;
    for (int i = 0; i < 4; ++i) vb += V[i][e] * b[i];
    for (int i = 0; i < 4; ++i) sol.x[i] += V[i][e] * vb / lam;
  }
  return sol;
}

}  // namespace kv::tensor

#pragma once

#include <array>
#include <cmath>

#include "kv/error.hpp"

namespace kv::tensor {

// Small dense helpers for dim <= 4 value-level work.
struct DMat {
  int dim = 0;
  std::array<std::array<double, 4>, 4> a{};

  double& operator()(int i, int j) { return a[i][j]; }
  double operator()(int i, int j) const { return a[i][j]; }
};

inline double frob(const DMat& m) {
  double s = 0;
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

inline DMat matmul(const DMat& x, const DMat& y) {
  DMat r;
  r.dim = x.dim;
  for (int i = 0; i < x.dim; ++i)
    for (int j = 0; j < x.dim; ++j) {
      double s = 0;
      for (int k = 0; k < x.dim; ++k) s += x(i, k) * y(k, j);
      r(i, j) = s;
    }
  return r;
}

// Eigenvalues of a small symmetric matrix by cyclic Jacobi; deterministic.
template <int N>
inline std::array<double, N> sym_eigenvalues(std::array<std::array<double, N>, N> m) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (int p = 0; p < N; ++p)
      for (int q = p + 1; q < N; ++q) off += m[p][q] * m[p][q];
    if (off < 1e-300) break;
    for (int p = 0; p < N; ++p) {
      for (int q = p + 1; q < N; ++q) {
        if (m[p][q] == 0.0) continue;
        const double theta = (m[q][q] - m[p][p]) / (2 * m[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1.0 / std::sqrt(t * t + 1);
        const double s = t * c;
        for (int k = 0; k < N; ++k) {
          const double mkp = m[k][p], mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (int k = 0; k < N; ++k) {
          const double mpk = m[p][k], mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
      }
    }
  }
  std::array<double, N> ev;
  for (int i = 0; i < N; ++i) ev[i] = m[i][i];
  for (int i = 1; i < N; ++i)
    for (int j = i; j > 0 && ev[j - 1] > ev[j]; --j) std::swap(ev[j - 1], ev[j]);
  return ev;
}

// Solve A x = b for small symmetric positive semidefinite A via eigen
// pseudo-inverse; flags rank deficiency.
struct LsqSolution {
  std::array<double, 4> x{};
  bool rank_deficient = false;
};

LsqSolution solve_spd4(const std::array<std::array<double, 4>, 4>& A, const std::array<double, 4>& b);

}  // namespace kv::tensor

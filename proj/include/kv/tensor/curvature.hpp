#pragma once

#include <array>
#include <functional>
#include <span>

#include "kv/dsl/chart.hpp"
#include "kv/dsl/eval.hpp"
#include "kv/jets/jet.hpp"
#include "kv/tensor/linalg.hpp"

namespace kv::tensor {

struct JetMatrix {
  int dim = 0;
  std::array<jets::Jet, 16> m;

  jets::Jet& at(int i, int j) { return m[i * dim + j]; }
  const jets::Jet& at(int i, int j) const { return m[i * dim + j]; }
  DMat values() const;
};

// Metric component jets at a point; checks positive definiteness of the value
// part (throws kv::domain_error otherwise and on domain violations).
JetMatrix metric_jets(const dsl::ChartSpec& chart, std::span<const double> point, int order);
// Caller-supplied metric field, bypassing the DSL (test metrics with
// transcendental entries are built this way).
using MetricFn = std::function<JetMatrix(std::span<const double> point, int order)>;

JetMatrix invert_jet_matrix(const JetMatrix& m);

using Tensor3 = std::array<std::array<std::array<double, 4>, 4>, 4>;
using Tensor4 = std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4>;

// Pointwise curvature data.  Index conventions:
//   gamma[k][i][j]    = Gamma^k_{ij}
//   riemann_low       : rm(X,Y,Z,W) = g(R(X,Y)W, Z), so rm(X,Y,X,Y) is the
//                       sectional numerator (positive on round spheres)
//   ricci[j][l]       = g^{ik} rm[i][j][k][l]
//   weyl_low          : same layout as riemann_low
//   asd_eigenvalues   : spectrum of the Weyl operator on the anti-self-dual
//                       2-form space of the declared coordinate orientation
//                       (4-dim charts only), ascending
struct CurvaturePack {
  int dim = 0;
  DMat g, g_inv;
  Tensor3 gamma{};
  Tensor4 riemann_low{};
  DMat ricci;
  double scalar = 0;
  Tensor4 weyl_low{};
  std::array<double, 3> asd_eigenvalues{};
  bool has_asd = false;

  double rm(std::span<const double> X, std::span<const double> Y, std::span<const double> Z,
            std::span<const double> W) const;
  double riemann_frob() const;
  double inner(std::span<const double> X, std::span<const double> Y) const;  // g(X,Y)
};

CurvaturePack curvature_pack(const dsl::ChartSpec& chart, std::span<const double> point, int order = 2);
CurvaturePack curvature_pack(const MetricFn& metric, int dim, std::span<const double> point);

// Christoffel jets (order one lower than the metric jets); used by the
// endomorphism covariant derivative.
struct ChristoffelJets {
  int dim = 0;
  std::array<jets::Jet, 64> g;
  jets::Jet& at(int k, int i, int j) { return g[(k * dim + i) * dim + j]; }
  const jets::Jet& at(int k, int i, int j) const { return g[(k * dim + i) * dim + j]; }
};

ChristoffelJets christoffel(const JetMatrix& gjets, const JetMatrix& g_inv);

}  // namespace kv::tensor

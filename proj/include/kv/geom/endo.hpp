#pragma once

#include <array>
#include <span>

#include "kv/tensor/curvature.hpp"
#include "kv/tensor/forms.hpp"

namespace kv::geom {

// Endomorphism field value at a point, components J^i_j carried as jets.
struct Endo {
  int dim = 0;
  std::array<jets::Jet, 16> comp;

  jets::Jet& at(int i, int j) { return comp[i * dim + j]; }
  const jets::Jet& at(int i, int j) const { return comp[i * dim + j]; }
  tensor::DMat values() const;
  std::array<double, 4> apply(std::span<const double> v) const;
};

// J^i_j = g^{ik} omega_{kj}; requires a nondegenerate 2-form.
Endo endo_from_form(const tensor::JetMatrix& g_inv, const tensor::FormValue& omega);

//||J^2 + Id|| / (1 + ||J||^2), value level
double almost_complex_residual(const Endo& J);
// ||J^T g J - g|| / (1 + ||g||)
double compat_residual(const tensor::DMat& g, const Endo& J);

// max over coordinate pairs of the Nijenhuis tensor norm, normalized;
// components must carry order >= 1 jets.
double nijenhuis_residual(const Endo& J);

// I = J on span{d1, d2}, -J on the g-orthogonal complement.
Endo opposite_structure(const Endo& J, std::span<const double> d1, std::span<const double> d2,
                        const tensor::DMat& g);

}  // namespace kv::geom

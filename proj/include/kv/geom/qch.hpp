#pragma once

#include <random>

#include "kv/geom/endo.hpp"
#include "kv/tensor/curvature.hpp"

namespace kv::geom {

// Holomorphic sectional curvature R(X, JX, JX, X) / g(X,X)^2.
double holomorphic_sectional_curvature(const tensor::CurvaturePack& pack, const Endo& J,
                                       std::span<const double> X);

// Quasi-constancy of K over unit vectors with fixed |X_D|: pairs of unit
// vectors with identical projection norm are constructed by independent
// rotations inside D and its orthogonal complement; returns the max
// normalized |K(X) - K(X')| over n_samples pairs.  Throws kv::contract_error
// when the span is degenerate or not J-invariant.
double qch_residual(const tensor::CurvaturePack& pack, const Endo& J, std::span<const double> d1,
                    std::span<const double> d2, int n_samples, std::mt19937_64& rng);

// Max normalized violation of the second Gray identity
//   R(X,Y,Z,W) - R(IX,IY,Z,W) = R(IX,Y,IZ,W) + R(IX,Y,Z,IW)
// over n_frames random 4-tuples.
double gray2_residual(const tensor::CurvaturePack& pack, const Endo& I, int n_frames,
                      std::mt19937_64& rng);

struct RicciFormChecks {
  double inv_residual = 0;   // || rho(I., I.) - rho ||, normalized
  double prop_residual = 0;  // min_lambda || rho - lambda omega_I ||, normalized
  double lambda = 0;
  bool vacuous = false;      // ||ric|| below the Ricci-flat threshold
};

// rho(X, Y) := ric(JX, Y)
RicciFormChecks ricci_form_checks(const tensor::CurvaturePack& pack, const Endo& J, const Endo& I,
                                  const tensor::FormValue& omega_I);

tensor::DMat ricci_form(const tensor::CurvaturePack& pack, const Endo& J);

}  // namespace kv::geom

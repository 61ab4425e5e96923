#pragma once

#include <array>

#include "kv/tensor/forms.hpp"

namespace kv::geom {

struct OneFormFit {
  std::array<double, 4> coeff{};  // solved 1-form coefficients
  double residual = 0;            // normalized leftover of the linear system
  bool rank_deficient = false;
};

// Solve d(omega) = 2 theta ^ omega for theta (least squares over the four
// 3-form components); omega coefficients must carry order >= 1 jets.
OneFormFit lee_form_solve(const tensor::FormValue& omega);

enum class CalabiSign { Plus, Minus };

// Solve d(omega_J +/- omega_I) = phi ^ (omega_J +/- omega_I) for phi.
// Degenerate combination (norm below 1e-12 of the inputs) is flagged.
struct CalabiFit : OneFormFit {
  bool degenerate = false;
};

CalabiFit calabi_residual(const tensor::FormValue& omega_J, const tensor::FormValue& omega_I,
                          CalabiSign sign);

// ||d(omega) - [phi ^ omega scaled]|| helper for closed-form matches:
// residual of d(omega) = scale * phi ^ omega with phi given by values.
double wedge_identity_residual(const tensor::FormValue& omega, const std::array<double, 4>& phi,
                               double scale);

}  // namespace kv::geom

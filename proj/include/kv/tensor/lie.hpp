#pragma once

#include <span>
#include <vector>

#include "kv/tensor/curvature.hpp"

namespace kv::tensor {

// (L_X g)_{ij} = X^k d_k g_ij + g_kj d_i X^k + g_ik d_j X^k, value level.
DMat lie_derivative_metric(const dsl::ChartSpec& chart, const std::vector<dsl::Expr>& X,
                           std::span<const double> point);
DMat lie_derivative_metric(const dsl::ChartSpec& chart, const std::string& vector_name,
                           std::span<const double> point);

// nabla_k J^i_j = d_k J^i_j + Gamma^i_{kl} J^l_j - Gamma^l_{kj} J^i_l
// jcomp: row-major J^i_j jets of order >= 1; gamma: Christoffel values.
Tensor3 covariant_derivative_endomorphism(const Tensor3& gamma, int dim,
                                          std::span<const jets::Jet> jcomp);

double tensor3_frob(const Tensor3& t, int dim);

}  // namespace kv::tensor

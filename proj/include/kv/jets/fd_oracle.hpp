#pragma once

#include <array>
#include <functional>
#include <span>

#include "kv/jets/layout.hpp"

namespace kv::jets {

// Central-difference derivative table to order 2.  Independent oracle for the
// jet arithmetic; used by the test suites only, never in the main pipeline.
struct DerivativeTable {
  int nvars = 0;
  double value = 0;
  std::array<double, kMaxVars> gradient{};
  std::array<std::array<double, kMaxVars>, kMaxVars> hessian{};
};

DerivativeTable finite_difference_oracle(const std::function<double(std::span<const double>)>& f,
                                         std::span<const double> point, double h);

}  // namespace kv::jets

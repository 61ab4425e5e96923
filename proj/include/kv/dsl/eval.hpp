#pragma once

#include <span>
#include <vector>

#include "kv/dsl/chart.hpp"
#include "kv/jets/jet.hpp"

namespace kv::dsl {

// Seeded coordinate jets at a point; reusable across many expression
// evaluations for the same (point, order).
struct EvalContext {
  const ChartSpec* chart = nullptr;
  int order = 0;
  std::vector<jets::Jet> coord_jets;
  std::vector<jets::Jet> param_jets;
};

EvalContext make_context(const ChartSpec& chart, std::span<const double> point, int order);

jets::Jet eval(const Expr& e, const EvalContext& ctx);

// Plain recursive double evaluation (order 0); used for domain checks and as
// the order-0 consistency reference.
double eval_plain(const Expr& e, const ChartSpec& chart, std::span<const double> point);

// All domain constraints strictly positive (by more than margin).
bool in_domain(const ChartSpec& chart, std::span<const double> point, double margin = 0.0);

// Jet of the expression at the point; throws kv::domain_error if the point
// violates the chart domain.
jets::Jet eval_expr(const Expr& e, const ChartSpec& chart, std::span<const double> point, int order);

}  // namespace kv::dsl

#include "kv/dsl/eval.hpp"

#include <cmath>

#include "kv/error.hpp"

namespace kv::dsl {

EvalContext make_context(const ChartSpec& chart, std::span<const double> point, int order) {
  if (static_cast<int>(point.size()) != chart.dim())
    throw contract_error("point dimension does not match chart");
  EvalContext ctx;
  ctx.chart = &chart;
  ctx.order = order;
  const int dim = chart.dim();
  ctx.coord_jets.reserve(dim);
  for (int i = 0; i < dim; ++i) ctx.coord_jets.push_back(jets::Jet::variable(point[i], i, dim, order));
  ctx.param_jets.reserve(chart.param_values.size());
  for (const double v : chart.param_values) ctx.param_jets.push_back(jets::Jet::constant(v, dim, order));
  return ctx;
}

jets::Jet eval(const Expr& e, const EvalContext& ctx) {
  switch (e->kind) {
    case NodeKind::Constant: return jets::Jet::constant(e->constant, ctx.chart->dim(), ctx.order);
    case NodeKind::Coord: return ctx.coord_jets[e->ref];
    case NodeKind::Param: return ctx.param_jets[e->ref];
    case NodeKind::Add: return eval(e->a, ctx) + eval(e->b, ctx);
    case NodeKind::Sub: return eval(e->a, ctx) - eval(e->b, ctx);
    case NodeKind::Mul: return eval(e->a, ctx) * eval(e->b, ctx);
    case NodeKind::Div: return eval(e->a, ctx) / eval(e->b, ctx);
    case NodeKind::Neg: return -eval(e->a, ctx);
    case NodeKind::PowInt: return powi(eval(e->a, ctx), e->exponent);
    case NodeKind::Call: {
      const jets::Jet a = eval(e->a, ctx);
      switch (e->call) {
        case CallKind::Sqrt: return sqrt(a);
        case CallKind::Ln: return log(a);
        case CallKind::Exp: return exp(a);
      }
    }
  }
  throw contract_error("corrupt expression node");
}

double eval_plain(const Expr& e, const ChartSpec& chart, std::span<const double> point) {
  switch (e->kind) {
    case NodeKind::Constant: return e->constant;
    case NodeKind::Coord: return point[e->ref];
    case NodeKind::Param: return chart.param_values[e->ref];
    case NodeKind::Add: return eval_plain(e->a, chart, point) + eval_plain(e->b, chart, point);
    case NodeKind::Sub: return eval_plain(e->a, chart, point) - eval_plain(e->b, chart, point);
    case NodeKind::Mul: return eval_plain(e->a, chart, point) * eval_plain(e->b, chart, point);
    case NodeKind::Div: {
      const double d = eval_plain(e->b, chart, point);
      if (d == 0.0) throw singular_evaluation("division by zero");
      return eval_plain(e->a, chart, point) / d;
    }
    case NodeKind::Neg: return -eval_plain(e->a, chart, point);
    case NodeKind::PowInt: return std::pow(eval_plain(e->a, chart, point), e->exponent);
    case NodeKind::Call: {
      const double a = eval_plain(e->a, chart, point);
      switch (e->call) {
        case CallKind::Sqrt:
          if (!(a > 0)) throw domain_error("sqrt of nonpositive value");
          return std::sqrt(a);
        case CallKind::Ln:
          if (!(a > 0)) throw domain_error("ln of nonpositive value");
          return std::log(a);
        case CallKind::Exp: return std::exp(a);
      }
    }
  }
  throw contract_error("corrupt expression node");
}

bool in_domain(const ChartSpec& chart, std::span<const double> point, double margin) {
  for (const auto& c : chart.domain) {
    double v;
    try {
      v = eval_plain(c, chart, point);
    } catch (const error&) {
      return false;
    }
    if (!(v > margin)) return false;
  }
  return true;
}

jets::Jet eval_expr(const Expr& e, const ChartSpec& chart, std::span<const double> point, int order) {
  if (!in_domain(chart, point))
    throw domain_error("point violates chart domain constraints");
  return eval(e, make_context(chart, point, order));
}

}  // namespace kv::dsl

#include "kv/dsl/chart.hpp"

#include "kv/error.hpp"

namespace kv::dsl {

Expr make_constant(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Constant;
  n->constant = v;
  return n;
}

Expr make_coord(int index) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Coord;
  n->ref = index;
  return n;
}

Expr make_param(int index) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Param;
  n->ref = index;
  return n;
}

Expr make_binary(NodeKind k, Expr a, Expr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Expr make_neg(Expr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Neg;
  n->a = std::move(a);
  return n;
}

Expr make_powi(Expr a, int exponent) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::PowInt;
  n->a = std::move(a);
  n->exponent = exponent;
  return n;
}

Expr make_call(CallKind c, Expr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Call;
  n->call = c;
  n->a = std::move(a);
  return n;
}

int Form2Expr::upper_index(int dim, int i, int j) {
  if (!(0 <= i && i < j && j < dim)) throw contract_error("form index out of range");
  // pairs (0,1),(0,2),...,(0,d-1),(1,2),...
  return i * dim - i * (i + 1) / 2 + (j - i - 1);
}

const Expr& Form2Expr::at(int i, int j) const {
  return upper[upper_index(dim, i, j)];
}

int ChartSpec::metric_index(int dim, int i, int j) {
  if (!(0 <= i && i <= j && j < dim)) throw contract_error("metric index out of range");
  return i * dim - i * (i - 1) / 2 + (j - i);
}

const Expr& ChartSpec::metric_at(int i, int j) const {
  if (i > j) std::swap(i, j);
  return metric_upper[metric_index(dim(), i, j)];
}

int ChartSpec::coord_index(const std::string& n) const {
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == n) return static_cast<int>(i);
  return -1;
}

int ChartSpec::param_index(const std::string& n) const {
  for (size_t i = 0; i < param_names.size(); ++i)
    if (param_names[i] == n) return static_cast<int>(i);
  return -1;
}

double ChartSpec::param(const std::string& n) const {
  const int i = param_index(n);
  if (i < 0) throw contract_error("unknown parameter: " + n);
  return param_values[i];
}

const Form2Expr* ChartSpec::find_form(const std::string& n) const {
  for (const auto& [name, f] : forms)
    if (name == n) return &f;
  return nullptr;
}

const std::vector<Expr>* ChartSpec::find_vector(const std::string& n) const {
  for (const auto& [name, v] : vector_fields)
    if (name == n) return &v;
  return nullptr;
}

const Expr* ChartSpec::find_scalar(const std::string& n) const {
  for (const auto& [name, s] : scalars)
    if (name == n) return &s;
  return nullptr;
}

}  // namespace kv::dsl

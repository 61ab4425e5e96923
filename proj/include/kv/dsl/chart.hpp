#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kv/dsl/ast.hpp"

namespace kv::dsl {

// Antisymmetric 2-form given by its strictly-upper-triangle entries.
struct Form2Expr {
  int dim = 0;
  std::vector<Expr> upper;  // entry (i,j), i<j, flattened row-major

  static int upper_index(int dim, int i, int j);
  const Expr& at(int i, int j) const;  // i<j
};

// Parsed coordinate chart: coordinate names, parameters, metric component
// expressions, named forms / vector fields / scalars, the open-domain
// constraints (each expression must stay > 0), and optional sampling data.
// Immutable after parse; evaluation is re-entrant.
struct ChartSpec {
  std::string name;
  std::vector<std::string> coords;  // 2 or 4
  std::vector<std::string> param_names;
  std::vector<double> param_values;
  std::vector<Expr> domain;
  std::vector<Expr> metric_upper;  // entry (i,j), i<=j, flattened
  std::vector<std::pair<std::string, Form2Expr>> forms;
  std::vector<std::pair<std::string, std::vector<Expr>>> vector_fields;
  std::vector<std::pair<std::string, Expr>> scalars;
  std::vector<std::optional<std::pair<double, double>>> box;  // per-coordinate sampling interval
  std::vector<Expr> sample_constraints;                       // extra sampling rejection, expr > 0

  int dim() const { return static_cast<int>(coords.size()); }

  static int metric_index(int dim, int i, int j);  // i<=j
  const Expr& metric_at(int i, int j) const;

  int coord_index(const std::string& n) const;  // -1 if absent
  int param_index(const std::string& n) const;
  double param(const std::string& n) const;  // throws if absent
  bool has_param(const std::string& n) const { return param_index(n) >= 0; }

  const Form2Expr* find_form(const std::string& n) const;
  const std::vector<Expr>* find_vector(const std::string& n) const;
  const Expr* find_scalar(const std::string& n) const;
};

}  // namespace kv::dsl

#pragma once

#include <array>
#include <vector>

#include "kv/dsl/chart.hpp"
#include "kv/dsl/eval.hpp"
#include "kv/jets/jet.hpp"

namespace kv::tensor {

// Antisymmetric p-form at a point; coefficients over strictly increasing
// index tuples, carried as jets so exterior derivatives exist.
struct FormValue {
  int dim = 0;
  int degree = 0;
  std::vector<jets::Jet> comps;

  static const std::vector<std::array<int, 4>>& tuples(int dim, int degree);
  static int ncomps(int dim, int degree);
  static int comp_index(int dim, int degree, const std::array<int, 4>& tuple);

  double value(const std::array<int, 4>& tuple) const;  // increasing tuple
  int order() const { return comps.empty() ? 0 : comps[0].order(); }
};

FormValue form_from_chart(const dsl::Form2Expr& f, const dsl::EvalContext& ctx);
FormValue one_form_d(const dsl::Expr& scalar, const dsl::EvalContext& ctx);  // d(scalar)

// One degree higher, coefficient jets one order lower (value-only at order 1).
FormValue exterior_derivative(const FormValue& f);

FormValue wedge(const FormValue& f, const FormValue& h);

FormValue form_add(const FormValue& f, const FormValue& h);
FormValue form_sub(const FormValue& f, const FormValue& h);
FormValue form_scale(const FormValue& f, double s);

// 1-form from value coefficients (constant jets)
FormValue one_form_values(int dim, const std::array<double, 4>& theta, int nvars_order_like_dim);

double frob_value(const FormValue& f);

}  // namespace kv::tensor

#include "kv/tensor/lie.hpp"

#include <cmath>

#include "kv/error.hpp"

namespace kv::tensor {

DMat lie_derivative_metric(const dsl::ChartSpec& chart, const std::vector<dsl::Expr>& X,
                           std::span<const double> point) {
  const int n = chart.dim();
  if (static_cast<int>(X.size()) != n) throw contract_error("vector field dimension mismatch");
  const dsl::EvalContext ctx = dsl::make_context(chart, point, 1);
  const JetMatrix G = metric_jets(chart, point, 1);
  std::vector<jets::Jet> Xj;
  Xj.reserve(n);
  for (const auto& e : X) Xj.push_back(dsl::eval(e, ctx));

  DMat out;
  out.dim = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < n; ++k) {
        s += Xj[k].value() * G.at(i, j).partial(k);
        s += G.at(k, j).value() * Xj[k].partial(i);
        s += G.at(i, k).value() * Xj[k].partial(j);
      }
      out(i, j) = s;
    }
  return out;
}

DMat lie_derivative_metric(const dsl::ChartSpec& chart, const std::string& vector_name,
                           std::span<const double> point) {
  const auto* v = chart.find_vector(vector_name);
  if (!v) throw contract_error("unknown vector field: " + vector_name);
  return lie_derivative_metric(chart, *v, point);
}

Tensor3 covariant_derivative_endomorphism(const Tensor3& gamma, int dim,
                                          std::span<const jets::Jet> jcomp) {
  Tensor3 out{};
  const auto J = [&](int i, int j) -> const jets::Jet& { return jcomp[i * dim + j]; };
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        double s = J(i, j).partial(k);
        for (int l = 0; l < dim; ++l)
          s += gamma[i][k][l] * J(l, j).value() - gamma[l][k][j] * J(i, l).value();
        out[k][i][j] = s;
      }
  return out;
}

double tensor3_frob(const Tensor3& t, int dim) {
  double s = 0;
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) s += t[k][i][j] * t[k][i][j];
  return std::sqrt(s);
}

}  // namespace kv::tensor

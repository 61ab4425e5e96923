#include "kv/tensor/forms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "kv/error.hpp"

namespace kv::tensor {

namespace {

std::vector<std::array<int, 4>> build_tuples(int dim, int degree) {
  std::vector<std::array<int, 4>> out;
  std::array<int, 4> t{-1, -1, -1, -1};
  const auto rec = [&](auto&& self, int start, int k) -> void {
    if (k == degree) {
      out.push_back(t);
      return;
    }
    for (int i = start; i < dim; ++i) {
      t[k] = i;
      self(self, i + 1, k + 1);
    }
    t[k] = -1;
  };
  rec(rec, 0, 0);
  return out;
}

int sign_of_merge(const std::array<int, 4>& idx, int p, int q) {
  // sign of the permutation sorting (idx[0..p), idx[p..p+q)) where each half
  // is already increasing; counts inversions across the halves
  int inv = 0;
  for (int i = 0; i < p; ++i)
    for (int j = p; j < p + q; ++j)
      if (idx[i] > idx[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

}  // namespace

const std::vector<std::array<int, 4>>& FormValue::tuples(int dim, int degree) {
  static std::map<std::pair<int, int>, std::vector<std::array<int, 4>>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto& v = cache[{dim, degree}];
  if (v.empty() && degree <= dim) v = build_tuples(dim, degree);
  return v;
}

int FormValue::ncomps(int dim, int degree) {
  return static_cast<int>(tuples(dim, degree).size());
}

int FormValue::comp_index(int dim, int degree, const std::array<int, 4>& tuple) {
  const auto& ts = tuples(dim, degree);
  for (size_t i = 0; i < ts.size(); ++i) {
    bool eq = true;
    for (int k = 0; k < degree; ++k) eq = eq && ts[i][k] == tuple[k];
    if (eq) return static_cast<int>(i);
  }
  throw contract_error("form component tuple out of range");
}

double FormValue::value(const std::array<int, 4>& tuple) const {
  return comps[comp_index(dim, degree, tuple)].value();
}

FormValue form_from_chart(const dsl::Form2Expr& f, const dsl::EvalContext& ctx) {
  FormValue out;
  out.dim = f.dim;
  out.degree = 2;
  const auto& ts = FormValue::tuples(f.dim, 2);
  out.comps.reserve(ts.size());
  for (const auto& t : ts) out.comps.push_back(dsl::eval(f.at(t[0], t[1]), ctx));
  return out;
}

FormValue one_form_d(const dsl::Expr& scalar, const dsl::EvalContext& ctx) {
  const jets::Jet s = dsl::eval(scalar, ctx);
  FormValue out;
  out.dim = ctx.chart->dim();
  out.degree = 1;
  for (int v = 0; v < out.dim; ++v) {
    if (s.order() >= 2)
      out.comps.push_back(s.partial_jet(v));
    else
      out.comps.push_back(jets::Jet::constant(s.partial(v), out.dim, 1));
  }
  return out;
}

FormValue exterior_derivative(const FormValue& f) {
  if (f.degree >= f.dim) throw contract_error("exterior derivative would exceed chart dimension");
  if (f.order() < 1) throw contract_error("exterior derivative requires order >= 1 coefficients");
  FormValue out;
  out.dim = f.dim;
  out.degree = f.degree + 1;
  const auto& ts = FormValue::tuples(f.dim, out.degree);
  const int p = f.degree;
  const bool can_jet = f.order() >= 2;
  const int out_order = can_jet ? f.order() - 1 : 1;
  for (const auto& t : ts) {
    jets::Jet acc = jets::Jet::constant(0.0, f.dim, out_order);
    for (int m = 0; m <= p; ++m) {
      std::array<int, 4> sub{-1, -1, -1, -1};
      int w = 0;
      for (int k = 0; k <= p; ++k)
        if (k != m) sub[w++] = t[k];
      const jets::Jet& c = f.comps[FormValue::comp_index(f.dim, p, sub)];
      jets::Jet dpart = can_jet ? c.partial_jet(t[m])
                                : jets::Jet::constant(c.partial(t[m]), f.dim, 1);
      if (m % 2) dpart = -dpart;
      acc += dpart;
    }
    out.comps.push_back(acc);
  }
  return out;
}

FormValue wedge(const FormValue& f, const FormValue& h) {
  if (f.dim != h.dim) throw contract_error("wedge: dimension mismatch");
  if (f.degree + h.degree > f.dim) throw contract_error("wedge: degree overflow");
  const int order = std::min(f.order(), h.order());
  FormValue out;
  out.dim = f.dim;
  out.degree = f.degree + h.degree;
  const auto& ts = FormValue::tuples(f.dim, out.degree);
  const int p = f.degree, q = h.degree;
  for (const auto& t : ts) {
    jets::Jet acc = jets::Jet::constant(0.0, f.dim, order);
    // all splits of t into an increasing p-subset and its complement
    const int total = p + q;
    for (int mask = 0; mask < (1 << total); ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) != p) continue;
      std::array<int, 4> merged{-1, -1, -1, -1};
      std::array<int, 4> ft{-1, -1, -1, -1}, ht{-1, -1, -1, -1};
      int fi = 0, hi = 0;
      for (int k = 0; k < total; ++k) {
        if (mask & (1 << k)) ft[fi++] = t[k];
        else ht[hi++] = t[k];
      }
      for (int k = 0; k < p; ++k) merged[k] = ft[k];
      for (int k = 0; k < q; ++k) merged[p + k] = ht[k];
      const int sgn = sign_of_merge(merged, p, q);
      jets::Jet term = f.comps[FormValue::comp_index(f.dim, p, ft)].truncated(order) *
                       h.comps[FormValue::comp_index(f.dim, q, ht)].truncated(order);
      acc += sgn > 0 ? term : -term;
    }
    out.comps.push_back(acc);
  }
  return out;
}

FormValue form_add(const FormValue& f, const FormValue& h) {
  if (f.dim != h.dim || f.degree != h.degree) throw contract_error("form_add: shape mismatch");
  FormValue out = f;
  for (size_t i = 0; i < out.comps.size(); ++i) out.comps[i] += h.comps[i];
  return out;
}

FormValue form_sub(const FormValue& f, const FormValue& h) {
  if (f.dim != h.dim || f.degree != h.degree) throw contract_error("form_sub: shape mismatch");
  FormValue out = f;
  for (size_t i = 0; i < out.comps.size(); ++i) out.comps[i] -= h.comps[i];
  return out;
}

FormValue form_scale(const FormValue& f, double s) {
  FormValue out = f;
  for (auto& c : out.comps) c *= s;
  return out;
}

FormValue one_form_values(int dim, const std::array<double, 4>& theta, int order) {
  FormValue out;
  out.dim = dim;
  out.degree = 1;
  for (int v = 0; v < dim; ++v) out.comps.push_back(jets::Jet::constant(theta[v], dim, order));
  return out;
}

double frob_value(const FormValue& f) {
  double s = 0;
  for (const auto& c : f.comps) s += c.value() * c.value();
  return std::sqrt(s);
}

}  // namespace kv::tensor

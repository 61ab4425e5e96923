#include "kv/jets/jet.hpp"

#include <cmath>

#include "kv/jets/kernels.hpp"

namespace kv::jets {

const Layout& Jet::layout() const {
  if (!layout_) throw contract_error("use of default-constructed jet");
  return *layout_;
}

void Jet::require_same(const Jet& o) const {
  if (layout_ != o.layout_) throw contract_error("jet arithmetic requires matching nvars and order");
  if (!layout_) throw contract_error("use of default-constructed jet");
}

Jet Jet::constant(double value, int nvars, int order) {
  Jet j(&Layout::get(nvars, order));
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(double value, int var_index, int nvars, int order) {
  if (var_index < 0 || var_index >= nvars)
    throw contract_error("seed_variable: var_index out of range");
  Jet j(&Layout::get(nvars, order));
  j.c_[0] = value;
  j.c_[1 + var_index] = 1.0;
  return j;
}

double Jet::partial(int v) const {
  const Layout& L = layout();
  if (v < 0 || v >= L.nvars) throw contract_error("partial: variable index out of range");
  return c_[1 + v];
}

double Jet::second_partial(int v, int w) const {
  const Layout& L = layout();
  if (L.order < 2) throw contract_error("second_partial requires order >= 2");
  if (v < 0 || v >= L.nvars || w < 0 || w >= L.nvars)
    throw contract_error("second_partial: variable index out of range");
  std::array<std::uint8_t, kMaxVars> alpha{};
  alpha[v]++;
  alpha[w]++;
  const int k = L.index_of(alpha);
  return v == w ? 2.0 * c_[k] : c_[k];
}

Jet Jet::partial_jet(int v) const {
  const Layout& L = layout();
  if (L.order < 2)
    throw contract_error("partial_jet: order-1 jets carry no differentiable remainder");
  if (v < 0 || v >= L.nvars) throw contract_error("partial_jet: variable index out of range");
  const Layout& out = Layout::get(L.nvars, L.order - 1);
  Jet r(&out);
  // lower-order slots are a graded prefix of the higher-order layout
  for (int k = 0; k < out.count; ++k) {
    const int src = L.shift_up[k][v];
    if (src >= 0) r.c_[k] = L.exponent[src][v] * c_[src];
  }
  return r;
}

Jet Jet::truncated(int order) const {
  const Layout& L = layout();
  if (order == L.order) return *this;
  if (order < 1 || order > L.order) throw contract_error("truncated: bad order");
  const Layout& out = Layout::get(L.nvars, order);
  Jet r(&out);
  for (int k = 0; k < out.count; ++k) r.c_[k] = c_[k];  // shared graded prefix
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  require_same(o);
  kernels::active().add(c_.data(), c_.data(), o.c_.data(), size());
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  require_same(o);
  kernels::active().sub(c_.data(), c_.data(), o.c_.data(), size());
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  *this = *this * o;
  return *this;
}

Jet& Jet::operator/=(const Jet& o) {
  *this = *this / o;
  return *this;
}

Jet& Jet::operator+=(double s) {
  layout();
  c_[0] += s;
  return *this;
}

Jet& Jet::operator-=(double s) {
  layout();
  c_[0] -= s;
  return *this;
}

Jet& Jet::operator*=(double s) {
  kernels::active().scale(c_.data(), c_.data(), s, size());
  return *this;
}

Jet& Jet::operator/=(double s) {
  return *this *= 1.0 / s;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.require_same(b);
  Jet r(a.layout_);
  kernels::active().mul(r.c_.data(), a.c_.data(), b.c_.data(), *a.layout_);
  return r;
}

Jet operator-(const Jet& a) {
  Jet r(a.layout_);
  kernels::active().scale(r.c_.data(), a.c_.data(), -1.0, a.size());
  return r;
}

Jet operator-(double s, const Jet& a) {
  Jet r = -a;
  r.c_[0] += s;
  return r;
}

Jet inverse(const Jet& a) {
  const Layout& L = a.layout();
  const double a0 = a.c_[0];
  if (a0 == 0.0)
    throw singular_evaluation("division by jet with zero value part (coordinate singularity)");
  // a = a0 (1 + n), n nilpotent: 1/a = (1/a0) sum (-n)^m, exact at the order
  Jet n = a / a0;
  n.c_[0] = 0.0;
  Jet acc = Jet::constant(1.0, L.nvars, L.order);
  for (int m = 0; m < L.order; ++m) {
    acc = acc * n;
    acc = -acc;
    acc.c_[0] += 1.0;  // Horner: acc = 1 - n*acc
  }
  return acc / a0;
}

Jet operator/(const Jet& a, const Jet& b) {
  a.require_same(b);
  return a * inverse(b);
}

Jet operator/(double s, const Jet& a) {
  return inverse(a) * s;
}

Jet compose(const Jet& a, std::span<const double> series) {
  const Layout& L = a.layout();
  Jet n = a;
  n.c_[0] = 0.0;
  Jet acc = Jet::constant(series.empty() ? 0.0 : series[series.size() - 1], L.nvars, L.order);
  for (int m = static_cast<int>(series.size()) - 2; m >= 0; --m) {
    acc = acc * n;
    acc.c_[0] += series[m];
  }
  return acc;
}

Jet sqrt(const Jet& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) throw domain_error("sqrt of jet with nonpositive value part");
  const int p = a.order();
  std::array<double, kMaxOrder + 1> s{};
  const double r = std::sqrt(a0);
  s[0] = r;
  // d^m sqrt / m! at a0: binom(1/2, m) a0^{1/2-m}
  double binom = 1.0;
  double power = r;
  for (int m = 1; m <= p; ++m) {
    binom *= (0.5 - (m - 1)) / m;
    power /= a0;
    s[m] = binom * power;
  }
  return compose(a, std::span<const double>(s.data(), p + 1));
}

Jet log(const Jet& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) throw domain_error("ln of jet with nonpositive value part");
  const int p = a.order();
  std::array<double, kMaxOrder + 1> s{};
  s[0] = std::log(a0);
  double power = 1.0;
  for (int m = 1; m <= p; ++m) {
    power /= a0;
    s[m] = (m % 2 ? 1.0 : -1.0) * power / m;
  }
  return compose(a, std::span<const double>(s.data(), p + 1));
}

Jet exp(const Jet& a) {
  const int p = a.order();
  std::array<double, kMaxOrder + 1> s{};
  const double e = std::exp(a.value());
  double f = 1.0;
  for (int m = 0; m <= p; ++m) {
    if (m > 0) f *= m;
    s[m] = e / f;
  }
  return compose(a, std::span<const double>(s.data(), p + 1));
}

Jet pow(const Jet& a, double exponent) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) throw domain_error("pow_real of jet with nonpositive base value");
  const int p = a.order();
  std::array<double, kMaxOrder + 1> s{};
  double binom = 1.0;
  double power = std::pow(a0, exponent);
  s[0] = power;
  for (int m = 1; m <= p; ++m) {
    binom *= (exponent - (m - 1)) / m;
    power /= a0;
    s[m] = binom * power;
  }
  return compose(a, std::span<const double>(s.data(), p + 1));
}

Jet powi(const Jet& a, int exponent) {
  if (exponent < 0) return inverse(powi(a, -exponent));
  Jet acc = Jet::constant(1.0, a.nvars(), a.order());
  Jet base = a;
  int e = exponent;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

}  // namespace kv::jets

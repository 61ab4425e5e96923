#pragma once

#include <array>
#include <span>

#include "kv/error.hpp"
#include "kv/jets/layout.hpp"

namespace kv::jets {

// Truncated multivariate Taylor expansion of a real quantity at a point, in
// up to 4 variables to order <= 3.  Coefficients are Taylor coefficients
// (partial derivative divided by the multi-index factorial), dense in the
// graded-reverse-lex layout.  Pure value semantics; arithmetic is exact
// truncation of the polynomial ring operations.
class Jet {
 public:
  Jet() = default;

  static Jet constant(double value, int nvars, int order);
  // seed_variable: value with unit first-order coefficient at var_index
  static Jet variable(double value, int var_index, int nvars, int order);

  int nvars() const { return layout_ ? layout_->nvars : 0; }
  int order() const { return layout_ ? layout_->order : 0; }
  int size() const { return layout_ ? layout_->count : 0; }
  const Layout& layout() const;

  double value() const { return c_[0]; }
  double coeff(int k) const { return c_[k]; }
  std::span<const double> coeffs() const { return {c_.data(), static_cast<size_t>(size())}; }

  // first partial derivative d/dv (equals the degree-1 coefficient)
  double partial(int v) const;
  // second partial derivative d^2/dv dw (coefficient times multi-index factorial)
  double second_partial(int v, int w) const;

  // jet of d/dv, one order lower
  Jet partial_jet(int v) const;
  // same expansion truncated to a lower order
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator+=(double s);
  Jet& operator-=(double s);
  Jet& operator*=(double s);
  Jet& operator/=(double s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a);
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a -= s; }
  friend Jet operator-(double s, const Jet& a);
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a /= s; }
  friend Jet operator/(double s, const Jet& a);

  // reciprocal via the truncated geometric series on the unit-plus-nilpotent part
  friend Jet inverse(const Jet& a);
  // univariate Taylor composition: sum_m series[m] * (a - a.value())^m
  friend Jet compose(const Jet& a, std::span<const double> series);

  friend Jet sqrt(const Jet& a);
  friend Jet log(const Jet& a);
  friend Jet exp(const Jet& a);
  friend Jet pow(const Jet& a, double exponent);  // positive base
  friend Jet powi(const Jet& a, int exponent);    // integer power, any base

 private:
  Jet(const Layout* layout) : layout_(layout) { c_.fill(0.0); }
  void require_same(const Jet& o) const;

  const Layout* layout_ = nullptr;
  std::array<double, kMaxCoeffs> c_{};
};

}  // namespace kv::jets

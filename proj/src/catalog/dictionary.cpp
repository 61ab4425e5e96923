#include <cmath>

#include "kv/catalog/catalog.hpp"
#include "kv/error.hpp"
#include "kv/jets/jet.hpp"

namespace kv::catalog {

namespace {

void require_linear_family(double A, double a, double c, double da_bc) {
  if (A != 0.0) throw contract_error("dictionary is defined for the linear family (A = 0)");
  if (!(a > 0) || !(c > 0)) throw contract_error("orthotoric linear family requires a > 0 and c > 0");
  if (!(da_bc > 0)) throw contract_error("orthotoric linear family requires d*a - b*c > 0");
}

}  // namespace

Dictionary parameter_dictionary(double a, double b, double c, double d) {
  const double dabc = d * a - b * c;
  require_linear_family(0.0, a, c, dabc);
  Dictionary dict;
  dict.k = (a - c) / (a + c);
  dict.M = (c + a) * a * a * c * c / (4 * dabc * dabc);
  dict.alpha = 2 * dabc / (a * a * c * c);
  dict.e = c * b / (2 * a) + a * d / (2 * c);
  dict.gamma = (b * c * c - d * a * a) / (2 * a * c);
  return dict;
}

VolumetricPoint volumetric_map(const OrthotoricParams& p, double xi, double eta) {
  const double dabc = p.d * p.a - p.b * p.c;
  require_linear_family(p.A, p.a, p.c, dabc);
  const double F = p.a * xi + p.b;
  const double G = p.c * eta + p.d;
  const double prod = -F * G;
  if (prod < 0) throw domain_error("volumetric_map: -F*G is negative (outside the metric cone)");
  const Dictionary dict = parameter_dictionary(p.a, p.b, p.c, p.d);

  VolumetricPoint v;
  v.x = std::sqrt(prod);
  v.y = 0.5 * p.c * xi + 0.5 * p.a * eta + dict.e;
  const double r = std::sqrt(v.x * v.x + v.y * v.y);
  const double r_closed = 0.5 * p.c * xi - 0.5 * p.a * eta + dict.gamma;
  v.radius_identity_residual = std::abs(r - r_closed) / (1.0 + std::abs(r_closed));
  const double lhs = p.c * p.c * F - p.a * p.a * G;
  const double rhs = 2 * p.a * p.c * r;
  v.poly_identity_residual = std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
  if (v.radius_identity_residual > 1e-12 || v.poly_identity_residual > 1e-12)
    throw error("volumetric_map: algebraic identity violated beyond 1e-12");
  return v;
}

double conformal_factor_residual(const OrthotoricParams& p, const Dictionary& dict, double xi,
                                 double eta) {
  const double F = p.a * xi + p.b;
  const double G = p.c * eta + p.d;
  const double lhs = 4 * (xi - eta) / (p.c * p.c * F - p.a * p.a * G);
  const double x = std::sqrt(-F * G);
  const double y = 0.5 * p.c * xi + 0.5 * p.a * eta + dict.e;
  const double r = std::sqrt(x * x + y * y);
  const double rhs = dict.alpha * (1 + 2 * dict.alpha * dict.M * (dict.k * y + r)) / r;
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

double conformal_factor_residual(const OrthotoricParams& p, double xi, double eta) {
  return conformal_factor_residual(p, parameter_dictionary(p.a, p.b, p.c, p.d), xi, eta);
}

double cauchy_riemann_residual(const OrthotoricParams& p, double xi, double eta) {
  const double dabc = p.d * p.a - p.b * p.c;
  require_linear_family(p.A, p.a, p.c, dabc);
  const double F = p.a * xi + p.b;
  const double G = p.c * eta + p.d;
  if (!(F > 0) || !(G < 0)) throw domain_error("cauchy_riemann_residual: outside the chart domain");
  const Dictionary dict = parameter_dictionary(p.a, p.b, p.c, p.d);

  // isothermal coordinates: xt = (2/a) sqrt(F), yt = (2/c) sqrt(-G)
  using jets::Jet;
  const double xt0 = 2.0 / p.a * std::sqrt(F);
  const double yt0 = 2.0 / p.c * std::sqrt(-G);
  const Jet xt = Jet::variable(xt0, 0, 2, 1);
  const Jet yt = Jet::variable(yt0, 1, 2, 1);
  // xi(xt) = (a/4) xt^2 - b/a, eta(yt) = -(c/4) yt^2 - d/c
  const Jet xij = 0.25 * p.a * xt * xt - p.b / p.a;
  const Jet etaj = -0.25 * p.c * yt * yt - p.d / p.c;
  const Jet Fj = p.a * xij + p.b;
  const Jet Gj = p.c * etaj + p.d;
  const Jet x = sqrt(-(Fj * Gj));
  const Jet y = 0.5 * p.c * xij + 0.5 * p.a * etaj + dict.e;
  // w = y + i x holomorphic in xt + i yt: dy/dxt = dx/dyt, dy/dyt = -dx/dxt
  const double r1 = y.partial(0) - x.partial(1);
  const double r2 = y.partial(1) + x.partial(0);
  const double scale = 1.0 + std::abs(x.partial(0)) + std::abs(x.partial(1));
  return std::sqrt(r1 * r1 + r2 * r2) / scale;
}

}  // namespace kv::catalog

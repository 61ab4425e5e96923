#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kv/dsl/chart.hpp"

namespace kv::catalog {

// F(xi) = A xi^2 + a xi + b, G(eta) = A eta^2 + c eta + d
struct OrthotoricParams {
  double A = 0, a = 1, b = 0, c = 1, d = 1;
};

struct TaubNutParams {
  double M = 0.5;
  double k = 0;
};

struct Dictionary {
  double k = 0, M = 0, alpha = 0, e = 0, gamma = 0;
};

// Linear-family constants of the isometry dictionary; requires a,c > 0 and
// da - bc > 0.  The consistency identity 2 alpha M (k e + gamma) = -1 holds
// exactly.
Dictionary parameter_dictionary(double a, double b, double c, double d);

struct VolumetricPoint {
  double x = 0, y = 0;
  double radius_identity_residual = 0;   // sqrt(x^2+y^2) vs (c/2)xi - (a/2)eta + gamma
  double poly_identity_residual = 0;     // c^2 F - a^2 G vs 2ac sqrt(x^2+y^2)
};

// Volumetric coordinates x = sqrt(-F G), y = (c/2) xi + (a/2) eta + e, with
// the two algebraic identities certified (throws kv::error above 1e-12).
VolumetricPoint volumetric_map(const OrthotoricParams& p, double xi, double eta);

// Normalized defect of the conformal-factor identity
//   4(xi-eta)/(c^2 F - a^2 G) = alpha (1 + 2 alpha M (k y + sqrt(x^2+y^2))) / sqrt(x^2+y^2)
double conformal_factor_residual(const OrthotoricParams& p, double xi, double eta);
double conformal_factor_residual(const OrthotoricParams& p, const Dictionary& dict, double xi,
                                 double eta);

// Residual of the Cauchy-Riemann system for w = y + i x as a function of the
// isothermal coordinates, evaluated via order-1 jets.
double cauchy_riemann_residual(const OrthotoricParams& p, double xi, double eta);

// Chart builders.  Coordinate declaration orders fix the orientation so that
// omega_J is self-dual (see README conventions).
dsl::ChartSpec orthotoric_chart(const OrthotoricParams& p);
dsl::ChartSpec taubnut_chart(const TaubNutParams& p);  // |k| < 1; |k| = 1 routes to exceptional
dsl::ChartSpec exceptional_taubnut_chart();
dsl::ChartSpec half_plane_chart();
dsl::ChartSpec burns_chart(double m);

// orthotoric variant with a cubic term added to F; breaks scalar-flatness
// (negative control)
dsl::ChartSpec orthotoric_cubic_chart(const OrthotoricParams& p, double eps);

const std::vector<std::string>& catalog_names();
bool is_catalog_chart(const std::string& name);
dsl::ChartSpec catalog_chart(const std::string& name);  // throws kv::contract_error if unknown

}  // namespace kv::catalog

#include <cmath>
#include <cstdio>
#include <string>

#include "kv/catalog/catalog.hpp"
#include "kv/dsl/parser.hpp"
#include "kv/error.hpp"

namespace kv::catalog {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string box_line(const char* coord, double lo, double hi) {
  return std::string("box ") + coord + " " + num(lo) + " " + num(hi) + "\n";
}

constexpr double kTwoPi = 6.283185307179586;

// F and G spelled inline (the DSL has no let-bindings)
const char* kF = "(A*xi^2 + a*xi + b)";
const char* kG = "(A*eta^2 + c*eta + d)";

std::string orthotoric_body(const std::string& fexpr) {
  const std::string F = fexpr;
  const std::string G = kG;
  std::string t;
  t += "domain xi - eta ; " + F + " ; -" + G + "\n";
  t += "metric\n";
  t += "  g[0,0] = (xi - eta) / " + F + "\n";
  t += "  g[0,1] = 0\n  g[0,2] = 0\n  g[0,3] = 0\n";
  t += "  g[1,1] = (" + F + " - " + G + ") / (xi - eta)\n";
  t += "  g[1,2] = 0\n";
  t += "  g[1,3] = (" + F + "*eta - " + G + "*xi) / (xi - eta)\n";
  t += "  g[2,2] = -(xi - eta) / " + G + "\n";
  t += "  g[2,3] = 0\n";
  t += "  g[3,3] = (" + F + "*eta^2 - " + G + "*xi^2) / (xi - eta)\n";
  t += "form omega_J\n";
  t += "  w[0,1] = -1\n  w[0,3] = -eta\n  w[1,2] = 1\n  w[2,3] = -xi\n";
  t += "form omega_I\n";
  t += "  w[0,1] = -1\n  w[0,3] = -eta\n  w[1,2] = -1\n  w[2,3] = xi\n";
  t += "vector X1 = (0, 1, 0, 0)\n";
  t += "vector X2 = (0, 0, 0, 1)\n";
  t += "vector D1 = (1, 0, 0, 0)\n";
  t += "vector D2 = (0, xi, 0, -1)\n";
  t += "scalar phi1 = xi + eta\n";
  t += "scalar phi2 = xi*eta\n";
  t += "end\n";
  return t;
}

// sampling intervals keeping F > 0, -G > 0 and xi > eta with headroom
std::pair<std::pair<double, double>, std::pair<double, double>> orthotoric_boxes(const OrthotoricParams& p) {
  if (p.A == 0.0) {
    if (!(p.a > 0) || !(p.c > 0) || !(p.d * p.a - p.b * p.c > 0))
      throw contract_error("orthotoric linear family requires a,c > 0 and d*a - b*c > 0");
    const double xi0 = -p.b / p.a;
    const double eta0 = -p.d / p.c;
    return {{xi0 + 0.1, xi0 + 5.0}, {eta0 - 5.0, eta0 - 0.1}};
  }
  if (!(p.A > 0)) throw contract_error("orthotoric charts support A >= 0");
  const double discG = p.c * p.c - 4 * p.A * p.d;
  if (!(discG > 0)) throw contract_error("orthotoric A>0: G never negative (c^2 - 4Ad <= 0)");
  const double r1 = (-p.c - std::sqrt(discG)) / (2 * p.A);
  const double r2 = (-p.c + std::sqrt(discG)) / (2 * p.A);
  const double w = r2 - r1;
  const std::pair<double, double> eta_box{r1 + 0.1 * w, r2 - 0.1 * w};
  const double discF = p.a * p.a - 4 * p.A * p.b;
  double lo = r2;  // xi above eta automatically
  if (discF > 0) lo = std::max(lo, (-p.a + std::sqrt(discF)) / (2 * p.A));
  return {{lo + 0.1, lo + 4.0}, eta_box};
}

std::string params_line_ortho(const OrthotoricParams& p) {
  return "params A=" + num(p.A) + " a=" + num(p.a) + " b=" + num(p.b) + " c=" + num(p.c) +
         " d=" + num(p.d) + "\n";
}

std::string taubnut_text(const char* name, double M, double k, bool exceptional) {
  // D = 1 + (1+k)u^2 + (1-k)v^2
  const std::string D = "(1 + (1+k)*u^2 + (1-k)*v^2)";
  std::string t;
  t += std::string("chart ") + name + "\n";
  t += "coords u v th1 th2\n";
  t += "params M=" + num(M) + " k=" + num(k) + "\n";
  t += "domain u ; v\n";
  t += box_line("u", 0.1, 3.0) + box_line("v", 0.1, 3.0);
  t += box_line("th1", 0.0, kTwoPi) + box_line("th2", 0.0, kTwoPi);
  t += "metric\n";
  t += "  g[0,0] = 2*" + D + "/M\n";
  t += "  g[0,1] = 0\n  g[0,2] = 0\n  g[0,3] = 0\n";
  t += "  g[1,1] = 2*" + D + "/M\n";
  t += "  g[1,2] = 0\n  g[1,3] = 0\n";
  t += "  g[2,2] = 2*v^2*((1 + (1+k)*u^2)^2 + (1+k)^2*u^2*v^2)/(M*" + D + ")\n";
  t += "  g[2,3] = 2*u^2*v^2*(2 + (1-k^2)*(u^2 + v^2))/(M*" + D + ")\n";
  t += "  g[3,3] = 2*u^2*((1 + (1-k)*v^2)^2 + (1-k)^2*u^2*v^2)/(M*" + D + ")\n";
  t += "form omega_J\n";
  t += "  w[0,2] = -2*(1+k)*u*v^2/M\n";
  t += "  w[1,2] = -2*v*(1 + (1+k)*u^2)/M\n";
  t += "  w[0,3] = -2*u*(1 + (1-k)*v^2)/M\n";
  t += "  w[1,3] = -2*(1-k)*u^2*v/M\n";
  t += "form omega_I\n";
  t += "  w[0,2] = 2*(1+k)*u*v^2/M\n";
  t += "  w[1,2] = -2*v*(1 + (1+k)*u^2)/M\n";
  t += "  w[0,3] = 2*u*(1 + (1-k)*v^2)/M\n";
  t += "  w[1,3] = -2*(1-k)*u^2*v/M\n";
  if (exceptional) {
    t += "form phi_form\n";
    t += "  w[1,2] = -sqrt(2)*v*(1 + 2*u^2)\n";
    t += "vector I_du_display = (0, 0, 0, -sqrt(2)*(1 + 2*u^2)/u)\n";
    t += "vector I_dth2_display = (u/(sqrt(2)*(1 + 2*u^2)), 0, 0, 0)\n";
    t += "scalar calabi_potential_plus = ln(1 + 2*u^2)\n";
  }
  t += "vector X1 = (0, 0, 1, 0)\n";
  t += "vector X2 = (0, 0, 0, 1)\n";
  t += "vector D1 = (1, 0, 0, 0)\n";
  t += "scalar phi1 = v^2*(1 + (1+k)*u^2)/M\n";
  t += "scalar phi2 = u^2*(1 + (1-k)*v^2)/M\n";
  t += "end\n";
  return t;
}

}  // namespace

dsl::ChartSpec orthotoric_chart(const OrthotoricParams& p) {
  const auto [xi_box, eta_box] = orthotoric_boxes(p);
  std::string t = "chart orthotoric\ncoords xi t eta z\n";
  t += params_line_ortho(p);
  t += box_line("xi", xi_box.first, xi_box.second);
  t += box_line("t", 0.0, kTwoPi);
  t += box_line("eta", eta_box.first, eta_box.second);
  t += box_line("z", 0.0, kTwoPi);
  t += orthotoric_body(kF);
  return dsl::parse_chart(t);
}

dsl::ChartSpec orthotoric_cubic_chart(const OrthotoricParams& p, double eps) {
  const auto [xi_box, eta_box] = orthotoric_boxes(p);
  std::string t = "chart orthotoric-cubic\ncoords xi t eta z\n";
  t += "params A=" + num(p.A) + " a=" + num(p.a) + " b=" + num(p.b) + " c=" + num(p.c) +
       " d=" + num(p.d) + " eps=" + num(eps) + "\n";
  t += box_line("xi", xi_box.first, xi_box.second);
  t += box_line("t", 0.0, kTwoPi);
  t += box_line("eta", eta_box.first, eta_box.second);
  t += box_line("z", 0.0, kTwoPi);
  t += orthotoric_body("(A*xi^2 + a*xi + b + eps*xi^3)");
  return dsl::parse_chart(t);
}

dsl::ChartSpec taubnut_chart(const TaubNutParams& p) {
  if (!(p.M > 0)) throw contract_error("taubnut_chart requires M > 0");
  if (p.k == 1.0 || p.k == -1.0) return exceptional_taubnut_chart();
  if (!(p.k > -1.0 && p.k < 1.0)) throw contract_error("taubnut_chart requires k in [-1, 1]");
  return dsl::parse_chart(taubnut_text("taubnut", p.M, p.k, false));
}

dsl::ChartSpec exceptional_taubnut_chart() {
  return dsl::parse_chart(taubnut_text("taubnut-exceptional", std::sqrt(2.0), 1.0, true));
}

dsl::ChartSpec half_plane_chart() {
  std::string t;
  t += "chart half-plane\n";
  t += "coords x th1 y th2\n";
  t += "domain x\n";
  t += box_line("x", 0.1, 5.0) + box_line("th1", 0.0, kTwoPi);
  t += box_line("y", -5.0, 5.0) + box_line("th2", 0.0, kTwoPi);
  t += "metric\n";
  t += "  g[0,0] = 1 + x^2\n";
  t += "  g[0,1] = 0\n  g[0,2] = 0\n  g[0,3] = 0\n";
  t += "  g[1,1] = x^2/(1 + x^2)\n";
  t += "  g[1,2] = 0\n";
  t += "  g[1,3] = 2*x^2*y/(1 + x^2)\n";
  t += "  g[2,2] = 1 + x^2\n";
  t += "  g[2,3] = 0\n";
  t += "  g[3,3] = ((1 + x^2)^2 + 4*x^2*y^2)/(1 + x^2)\n";
  t += "form omega_J\n";
  t += "  w[0,1] = -x\n  w[0,3] = -2*x*y\n  w[2,3] = -(1 + x^2)\n";
  t += "form omega_I\n";
  t += "  w[0,1] = -x\n  w[0,3] = -2*x*y\n  w[2,3] = 1 + x^2\n";
  t += "vector Y1 = (0, 1, 0, 0)\n";
  t += "vector Y2 = (0, 0, 0, 1)\n";
  t += "vector D1 = (1, 0, 0, 0)\n";
  t += "scalar phi1 = x^2/2\n";
  t += "scalar phi2 = (1 + x^2)*y\n";
  t += "scalar lee_potential = ln(1 + x^2)\n";
  t += "scalar calabi_potential_minus = ln(1 + x^2)\n";
  t += "end\n";
  return dsl::parse_chart(t);
}

dsl::ChartSpec burns_chart(double m) {
  if (!(m > 0)) throw contract_error("burns_chart requires m > 0");
  const std::string P = "(1 + x2^2 + y2^2)";
  const std::string Q = "(x1^2 + y1^2 + m/(1 + x2^2 + y2^2)^2)";
  const std::string N = "((x1^2 + y1^2)*(1 + x2^2 + y2^2) + m)";
  const std::string QI = "((" + N + "*(x2^2 + y2^2 - 1) - m*(x2^2 + y2^2))/(1 + x2^2 + y2^2)^2)";
  const std::string Sre = "(x1*x2 + y1*y2)";
  const std::string Sim = "(x1*y2 - x2*y1)";
  const std::string kap = "(m/" + N + "^2)";
  std::string t;
  t += "chart burns\n";
  t += "coords x1 y1 x2 y2\n";
  t += "params m=" + num(m) + "\n";
  t += "domain x1^2 + y1^2\n";
  for (const char* c : {"x1", "y1", "x2", "y2"}) t += box_line(c, -3.0, 3.0);
  t += "sample 9 - (x1^2 + y1^2) ; x1^2 + y1^2 - 0.04 ; 9 - (x2^2 + y2^2) ; x2^2 + y2^2 - 0.04\n";
  t += "metric\n";
  t += "  g[0,0] = 2*" + P + "\n";
  t += "  g[0,1] = 0\n";
  t += "  g[0,2] = 2*" + Sre + "\n";
  t += "  g[0,3] = 2*" + Sim + "\n";
  t += "  g[1,1] = 2*" + P + "\n";
  t += "  g[1,2] = -2*" + Sim + "\n";
  t += "  g[1,3] = 2*" + Sre + "\n";
  t += "  g[2,2] = 2*" + Q + "\n";
  t += "  g[2,3] = 0\n";
  t += "  g[3,3] = 2*" + Q + "\n";
  t += "form omega_J\n";
  t += "  w[0,1] = -2*" + P + "\n";
  t += "  w[0,2] = 2*" + Sim + "\n";
  t += "  w[0,3] = -2*" + Sre + "\n";
  t += "  w[1,2] = 2*" + Sre + "\n";
  t += "  w[1,3] = 2*" + Sim + "\n";
  t += "  w[2,3] = -2*" + Q + "\n";
  t += "form omega_I\n";
  t += "  w[0,1] = -2*" + P + "\n";
  t += "  w[0,2] = 2*" + Sim + "\n";
  t += "  w[0,3] = -2*" + Sre + "\n";
  t += "  w[1,2] = 2*" + Sre + "\n";
  t += "  w[1,3] = 2*" + Sim + "\n";
  t += "  w[2,3] = -2*" + QI + "\n";
  t += "form rho_closed\n";
  t += "  w[0,1] = -2*" + kap + "*" + P + "\n";
  t += "  w[0,2] = 2*" + kap + "*" + Sim + "\n";
  t += "  w[0,3] = -2*" + kap + "*" + Sre + "\n";
  t += "  w[1,2] = 2*" + kap + "*" + Sre + "\n";
  t += "  w[1,3] = 2*" + kap + "*" + Sim + "\n";
  t += "  w[2,3] = -2*" + kap + "*" + QI + "\n";
  t += "scalar potential = (x1^2 + y1^2)*(1 + x2^2 + y2^2) + m*ln((x1^2 + y1^2)*(1 + x2^2 + y2^2))\n";
  t += "scalar lee_potential = ln(" + N + ")\n";
  t += "scalar calabi_potential_minus = ln(" + N + ")\n";
  t += "end\n";
  return dsl::parse_chart(t);
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "orthotoric",      "orthotoric-asym", "orthotoric-mixed", "orthotoric-quad",
      "orthotoric-quad2", "taubnut",        "taubnut-k0",       "taubnut-km09",
      "taubnut-exceptional", "half-plane",  "burns",            "burns-m05",
      "burns-m4",
  };
  return names;
}

bool is_catalog_chart(const std::string& name) {
  for (const auto& n : catalog_names())
    if (n == name) return true;
  return false;
}

dsl::ChartSpec catalog_chart(const std::string& name) {
  if (name == "orthotoric") return orthotoric_chart({0, 1, 0, 1, 1});
  if (name == "orthotoric-asym") return orthotoric_chart({0, 2, 0, 1, 1});
  if (name == "orthotoric-mixed") return orthotoric_chart({0, 3, 1, 1, 2});
  if (name == "orthotoric-quad") return orthotoric_chart({1, 1, 0, 1, 0});
  if (name == "orthotoric-quad2") return orthotoric_chart({1, 1, 1, 3, 1});
  if (name == "taubnut") return taubnut_chart({0.5, 0.5});
  if (name == "taubnut-k0") return taubnut_chart({0.5, 0.0});
  if (name == "taubnut-km09") return taubnut_chart({0.5, -0.9});
  if (name == "taubnut-exceptional") return exceptional_taubnut_chart();
  if (name == "half-plane") return half_plane_chart();
  if (name == "burns") return burns_chart(1.0);
  if (name == "burns-m05") return burns_chart(0.5);
  if (name == "burns-m4") return burns_chart(4.0);
  throw contract_error("unknown catalog chart: " + name);
}

}  // namespace kv::catalog

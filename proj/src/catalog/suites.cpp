#include "kv/catalog/suites.hpp"

#include <cmath>
#include <cstdio>

#include "kv/dsl/parser.hpp"
#include "kv/error.hpp"
#include "kv/geom/lee.hpp"
#include "kv/geom/qch.hpp"
#include "kv/geom/wirtinger.hpp"
#include "kv/tensor/lie.hpp"
#include "kv/verify/sample.hpp"

namespace kv::catalog {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

PointData::PointData(const dsl::ChartSpec& chart, std::vector<double> pt, int order)
    : chart_(&chart), pt_(std::move(pt)), order_(order) {}

const dsl::EvalContext& PointData::ectx() const {
  if (!ectx_) ectx_ = dsl::make_context(*chart_, pt_, order_);
  return *ectx_;
}

const tensor::JetMatrix& PointData::gjets() const {
  if (!gjets_) gjets_ = tensor::metric_jets(*chart_, pt_, order_);
  return *gjets_;
}

const tensor::JetMatrix& PointData::ginv_jets() const {
  if (!ginv_) ginv_ = tensor::invert_jet_matrix(gjets());
  return *ginv_;
}

const tensor::CurvaturePack& PointData::pack() const {
  if (!pack_) pack_ = tensor::curvature_pack(*chart_, pt_, order_);
  return *pack_;
}

const tensor::FormValue& PointData::form(const std::string& name) const {
  auto it = forms_.find(name);
  if (it == forms_.end()) {
    const dsl::Form2Expr* f = chart_->find_form(name);
    if (!f) throw contract_error("chart has no form named " + name);
    it = forms_.emplace(name, tensor::form_from_chart(*f, ectx())).first;
  }
  return it->second;
}

const geom::Endo& PointData::endo_of(const std::string& form_name) const {
  auto it = endos_.find(form_name);
  if (it == endos_.end())
    it = endos_.emplace(form_name, geom::endo_from_form(ginv_jets(), form(form_name))).first;
  return it->second;
}

ChartContext make_chart_context(dsl::ChartSpec spec) {
  ChartContext ctx;
  ctx.hash = dsl::chart_hash(spec);
  const auto has = [&](const char* p) { return spec.has_param(p); };
  if (has("A") && has("a") && has("b") && has("c") && has("d")) {
    ctx.ortho = OrthotoricParams{spec.param("A"), spec.param("a"), spec.param("b"),
                                 spec.param("c"), spec.param("d")};
  }
  if (has("M") && has("k")) ctx.taubnut = TaubNutParams{spec.param("M"), spec.param("k")};
  if (has("m") && spec.find_form("rho_closed")) ctx.burns_m = spec.param("m");
  for (const auto& [pn, vn] : std::initializer_list<std::pair<const char*, const char*>>{
           {"phi1", "X1"}, {"phi2", "X2"}, {"phi1", "Y1"}, {"phi2", "Y2"}}) {
    if (spec.find_scalar(pn) && spec.find_vector(vn)) ctx.killing.emplace_back(pn, vn);
  }
  ctx.spec = std::move(spec);
  return ctx;
}

namespace {

using Run = std::function<CheckOutcome(const ChartContext&, PointData&, std::mt19937_64&)>;

CheckOutcome upper(double residual) {
  CheckOutcome o;
  o.residual = residual;
  return o;
}

std::array<double, 4> eval_vector_values(const dsl::ChartSpec& chart,
                                         const std::vector<dsl::Expr>& comps,
                                         const dsl::EvalContext& ctx) {
  std::array<double, 4> v{};
  for (int i = 0; i < chart.dim(); ++i) v[i] = dsl::eval(comps[i], ctx).value();
  return v;
}

// D1 from the chart (or the Lee form sharp), D2 = J D1
struct Plane {
  std::array<double, 4> d1{}, d2{};
};

Plane distribution_plane(const ChartContext& cc, PointData& p) {
  Plane pl;
  const auto& pk = p.pack();
  if (const auto* d1e = cc.spec.find_vector("D1")) {
    pl.d1 = eval_vector_values(cc.spec, *d1e, p.ectx());
  } else {
    const geom::OneFormFit lee = geom::lee_form_solve(p.form("omega_I"));
    for (int i = 0; i < pk.dim; ++i)
      for (int j = 0; j < pk.dim; ++j) pl.d1[i] += pk.g_inv(i, j) * lee.coeff[j];
  }
  if (const auto* d2e = cc.spec.find_vector("D2")) {
    pl.d2 = eval_vector_values(cc.spec, *d2e, p.ectx());
  } else {
    pl.d2 = p.endo_of("omega_J").apply(pl.d1);
  }
  return pl;
}

double form_values_residual(const tensor::FormValue& a, const tensor::FormValue& b) {
  double diff2 = 0, ref2 = 0;
  for (size_t i = 0; i < a.comps.size(); ++i) {
    const double d = a.comps[i].value() - b.comps[i].value();
    diff2 += d * d;
    ref2 += b.comps[i].value() * b.comps[i].value();
  }
  return std::sqrt(diff2) / (1.0 + std::sqrt(ref2));
}

void add_common_checks(std::vector<CheckDef>& out) {
  out.push_back({"riemann-symmetries", 1e-10, false, true, false, {"curvature"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto& pk = p.pack();
                   const int n = pk.dim;
                   double worst2 = 0;
                   for (int i = 0; i < n; ++i)
                     for (int j = 0; j < n; ++j)
                       for (int k = 0; k < n; ++k)
                         for (int l = 0; l < n; ++l) {
                           const auto& R = pk.riemann_low;
                           const double a1 = R[i][j][k][l] + R[j][i][k][l];
                           const double a2 = R[i][j][k][l] + R[i][j][l][k];
                           const double a3 = R[i][j][k][l] - R[k][l][i][j];
                           const double b1 = R[i][j][k][l] + R[j][l][k][i] + R[l][i][k][j];
                           worst2 = std::max({worst2, a1 * a1, a2 * a2, a3 * a3, b1 * b1});
                         }
                   return upper(std::sqrt(worst2) / (1.0 + pk.riemann_frob()));
                 }});
  out.push_back({"scalar-flat", 1e-8, false, true, false, {"curvature"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto& pk = p.pack();
                   return upper(std::abs(pk.scalar) / (1.0 + pk.riemann_frob()));
                 }});
}

void add_dim4_checks(std::vector<CheckDef>& out) {
  out.push_back({"weyl-traces", 1e-10, false, true, false, {"curvature"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto& pk = p.pack();
                   double wnorm2 = 0, worst = 0;
                   for (int i = 0; i < 4; ++i)
                     for (int j = 0; j < 4; ++j)
                       for (int k = 0; k < 4; ++k)
                         for (int l = 0; l < 4; ++l)
                           wnorm2 += pk.weyl_low[i][j][k][l] * pk.weyl_low[i][j][k][l];
                   for (int j = 0; j < 4; ++j)
                     for (int l = 0; l < 4; ++l) {
                       double tr = 0;
                       for (int i = 0; i < 4; ++i)
                         for (int k = 0; k < 4; ++k) tr += pk.g_inv(i, k) * pk.weyl_low[i][j][k][l];
                       worst = std::max(worst, std::abs(tr));
                     }
                   return upper(worst / (1.0 + std::sqrt(wnorm2)));
                 }});
  out.push_back({"asd-tracefree", 1e-10, false, true, false, {"curvature"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto ev = p.pack().asd_eigenvalues;
                   const double scale = std::max({std::abs(ev[0]), std::abs(ev[1]), std::abs(ev[2])});
                   return upper(std::abs(ev[0] + ev[1] + ev[2]) / (1.0 + scale));
                 }});
  out.push_back({"asd-degenerate", 1e-6, false, true, false, {"curvature"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto ev = p.pack().asd_eigenvalues;  // ascending
                   const double scale = std::max({std::abs(ev[0]), std::abs(ev[1]), std::abs(ev[2])});
                   const double gap = std::min(ev[1] - ev[0], ev[2] - ev[1]);
                   return upper(gap / (1.0 + scale));
                 }});
}

void add_kahler_checks(std::vector<CheckDef>& out, const ChartContext& cc) {
  out.push_back({"kahler-domega", 1e-10, false, true, false, {"kahler"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto& om = p.form("omega_J");
                   const auto dom = tensor::exterior_derivative(om);
                   return upper(tensor::frob_value(dom) / (1.0 + tensor::frob_value(om)));
                 }});
  out.push_back({"kahler-nijenhuis", 1e-9, false, true, false, {"kahler"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   return upper(geom::nijenhuis_residual(p.endo_of("omega_J")));
                 }});
  out.push_back({"kahler-j-square", 1e-12, false, true, false, {"kahler"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   return upper(geom::almost_complex_residual(p.endo_of("omega_J")));
                 }});
  out.push_back({"kahler-nabla-j", 1e-9, false, true, false, {"kahler"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto& pk = p.pack();
                   const auto& J = p.endo_of("omega_J");
                   const auto nj = tensor::covariant_derivative_endomorphism(
                       pk.gamma, pk.dim, std::span<const jets::Jet>(J.comp.data(), 16));
                   return upper(tensor::tensor3_frob(nj, pk.dim) /
                                (1.0 + tensor::frob(J.values())));
                 }});
  for (const auto& [pot, vec] : cc.killing) {
    out.push_back({"killing-lie-" + vec, 1e-10, false, true, false, {"kahler"},
                   [vec = vec](const ChartContext& c, PointData& p, std::mt19937_64&) {
                     const auto L = tensor::lie_derivative_metric(c.spec, vec, p.point());
                     return upper(tensor::frob(L) / (1.0 + tensor::frob(p.pack().g)));
                   }});
    out.push_back({"killing-potential-" + vec, 1e-9, false, true, false, {"kahler"},
                   [pot = pot, vec = vec](const ChartContext& c, PointData& p, std::mt19937_64&) {
                     const auto& pk = p.pack();
                     const jets::Jet phi = dsl::eval(*c.spec.find_scalar(pot), p.ectx());
                     std::array<double, 4> grad{};
                     for (int i = 0; i < pk.dim; ++i)
                       for (int j = 0; j < pk.dim; ++j) grad[i] += pk.g_inv(i, j) * phi.partial(j);
                     const auto Jg = p.endo_of("omega_J").apply(grad);
                     const auto X = eval_vector_values(c.spec, *c.spec.find_vector(vec), p.ectx());
                     std::array<double, 4> diff{};
                     for (int i = 0; i < pk.dim; ++i) diff[i] = X[i] - Jg[i];
                     const double dn = std::sqrt(pk.inner(diff, diff));
                     const double xn = std::sqrt(pk.inner(X, X));
                     return upper(dn / (1.0 + xn));
                   }});
  }
}

void add_hermitian_checks(std::vector<CheckDef>& out, const ChartContext& cc) {
  out.push_back({"i-square", 1e-12, false, true, false, {"hermitian"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   return upper(geom::almost_complex_residual(p.endo_of("omega_I")));
                 }});
  out.push_back({"i-compat", 1e-10, false, true, false, {"hermitian"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   return upper(geom::compat_residual(p.pack().g, p.endo_of("omega_I")));
                 }});
  out.push_back({"i-orientation", 1e-10, false, true, false, {"hermitian"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const double vI = tensor::wedge(p.form("omega_I"), p.form("omega_I")).comps[0].value();
                   const double vJ = tensor::wedge(p.form("omega_J"), p.form("omega_J")).comps[0].value();
                   return upper(std::abs(vI + vJ) / (1.0 + std::abs(vJ)));
                 }});
  out.push_back({"i-nijenhuis", 1e-9, false, true, false, {"hermitian"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   return upper(geom::nijenhuis_residual(p.endo_of("omega_I")));
                 }});
  out.push_back({"i-nabla-positive", 1e-3, true, true, false, {"hermitian"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto& pk = p.pack();
                   const auto& I = p.endo_of("omega_I");
                   const auto ni = tensor::covariant_derivative_endomorphism(
                       pk.gamma, pk.dim, std::span<const jets::Jet>(I.comp.data(), 16));
                   return upper(tensor::tensor3_frob(ni, pk.dim));
                 }});
  out.push_back({"lee-residual", 1e-8, false, true, false, {"hermitian"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto fit = geom::lee_form_solve(p.form("omega_I"));
                   CheckOutcome o = upper(fit.residual);
                   if (fit.rank_deficient) o.note = "rank-deficient";
                   return o;
                 }});
  if (cc.spec.find_scalar("lee_potential")) {
    out.push_back({"lee-match", 1e-8, false, true, false, {"hermitian"},
                   [](const ChartContext& c, PointData& p, std::mt19937_64&) {
                     const auto fit = geom::lee_form_solve(p.form("omega_I"));
                     const auto dpot = tensor::one_form_d(*c.spec.find_scalar("lee_potential"), p.ectx());
                     double diff2 = 0, ref2 = 0;
                     for (int i = 0; i < p.chart().dim(); ++i) {
                       const double d = fit.coeff[i] - dpot.comps[i].value();
                       diff2 += d * d;
                       ref2 += dpot.comps[i].value() * dpot.comps[i].value();
                     }
                     return upper(std::sqrt(diff2) / (1.0 + std::sqrt(ref2)));
                   }});
    out.push_back({"lee-d-identity", 1e-10, false, true, false, {"hermitian"},
                   [](const ChartContext& c, PointData& p, std::mt19937_64&) {
                     const auto dpot = tensor::one_form_d(*c.spec.find_scalar("lee_potential"), p.ectx());
                     std::array<double, 4> phi{};
                     for (int i = 0; i < p.chart().dim(); ++i) phi[i] = dpot.comps[i].value();
                     return upper(geom::wedge_identity_residual(p.form("omega_I"), phi, 2.0));
                   }});
  }
}

void add_calabi_checks(std::vector<CheckDef>& out, const ChartContext& cc) {
  const bool plus = cc.spec.find_scalar("calabi_potential_plus") != nullptr;
  const bool minus = cc.spec.find_scalar("calabi_potential_minus") != nullptr;
  if (!plus && !minus) return;
  const geom::CalabiSign sign = plus ? geom::CalabiSign::Plus : geom::CalabiSign::Minus;
  const std::string pot = plus ? "calabi_potential_plus" : "calabi_potential_minus";
  const std::string base = plus ? "calabi-plus" : "calabi-minus";
  out.push_back({base + "-residual", 1e-8, false, true, false, {"calabi"},
                 [sign](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto fit = geom::calabi_residual(p.form("omega_J"), p.form("omega_I"), sign);
                   CheckOutcome o = upper(fit.residual);
                   o.vacuous = fit.degenerate;
                   return o;
                 }});
  // the solve can be rank-deficient (omega_J -/+ omega_I has rank 2 on Calabi
  // charts), so the match asserts that the closed-form phi satisfies the
  // equation; on the determined subspace this equals coefficient equality
  out.push_back({base + "-phi-match", 1e-8, false, true, false, {"calabi"},
                 [sign, pot](const ChartContext& c, PointData& p, std::mt19937_64&) {
                   const auto& oj = p.form("omega_J");
                   const auto& oi = p.form("omega_I");
                   const auto psi = sign == geom::CalabiSign::Plus ? tensor::form_add(oj, oi)
                                                                   : tensor::form_sub(oj, oi);
                   const auto dpot = tensor::one_form_d(*c.spec.find_scalar(pot), p.ectx());
                   std::array<double, 4> phi{};
                   for (int i = 0; i < p.chart().dim(); ++i) phi[i] = dpot.comps[i].value();
                   return upper(geom::wedge_identity_residual(psi, phi, 1.0));
                 }});
}

void add_qch_checks(std::vector<CheckDef>& out) {
  out.push_back({"qch", 1e-7, false, true, false, {"qch"},
                 [](const ChartContext& c, PointData& p, std::mt19937_64& rng) {
                   const Plane pl = distribution_plane(c, p);
                   return upper(geom::qch_residual(p.pack(), p.endo_of("omega_J"), pl.d1, pl.d2, 32, rng));
                 }});
  out.push_back({"qch-rescale-invariance", 1e-12, false, true, false, {"qch"},
                 [](const ChartContext& c, PointData& p, std::mt19937_64& rng) {
                   const Plane pl = distribution_plane(c, p);
                   std::array<double, 4> s1 = pl.d1, s2 = pl.d2;
                   for (auto& x : s1) x *= 7.3;
                   for (auto& x : s2) x *= 7.3;
                   std::mt19937_64 r1 = rng, r2 = rng;
                   const double a = geom::qch_residual(p.pack(), p.endo_of("omega_J"), pl.d1, pl.d2, 8, r1);
                   const double b = geom::qch_residual(p.pack(), p.endo_of("omega_J"), s1, s2, 8, r2);
                   return upper(std::abs(a - b));
                 }});
  out.push_back({"g2", 1e-7, false, true, false, {"qch"},
                 [](const ChartContext&, PointData& p, std::mt19937_64& rng) {
                   return upper(geom::gray2_residual(p.pack(), p.endo_of("omega_I"), 16, rng));
                 }});
  out.push_back({"ricci-i-invariance", 1e-8, false, true, false, {"curvature"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto rc = geom::ricci_form_checks(p.pack(), p.endo_of("omega_J"),
                                                           p.endo_of("omega_I"), p.form("omega_I"));
                   CheckOutcome o = upper(rc.inv_residual);
                   o.vacuous = rc.vacuous;
                   return o;
                 }});
  out.push_back({"ricci-prop-omega-i", 1e-8, false, true, false, {"curvature"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto rc = geom::ricci_form_checks(p.pack(), p.endo_of("omega_J"),
                                                           p.endo_of("omega_I"), p.form("omega_I"));
                   CheckOutcome o = upper(rc.prop_residual);
                   o.vacuous = rc.vacuous;
                   if (!rc.vacuous) o.note = "lambda=" + fmt(rc.lambda);
                   return o;
                 }});
}

void add_orthotoric_checks(std::vector<CheckDef>& out, const ChartContext& cc) {
  const OrthotoricParams p0 = *cc.ortho;
  out.push_back({"hermitian-norms", 1e-10, false, true, false, {"kahler"},
                 [p0](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const double xi = p.point()[0], eta = p.point()[2];
                   const double F = p0.A * xi * xi + p0.a * xi + p0.b;
                   const double G = p0.A * eta * eta + p0.c * eta + p0.d;
                   const auto& g = p.pack().g;
                   const double n11 = (F - G) / (xi - eta);
                   const double n12 = (F * eta - G * xi) / (xi - eta);
                   const double n22 = (F * eta * eta - G * xi * xi) / (xi - eta);
                   const double r = std::max({std::abs(g(1, 1) - n11), std::abs(g(1, 3) - n12),
                                              std::abs(g(3, 3) - n22)});
                   return upper(r / (1.0 + std::abs(n11) + std::abs(n12) + std::abs(n22)));
                 }});
  if (p0.A != 0.0) return;
  out.push_back({"dict-identity", 1e-11, false, false, false, {"isometry"},
                 [p0](const ChartContext&, PointData&, std::mt19937_64&) {
                   const Dictionary d = parameter_dictionary(p0.a, p0.b, p0.c, p0.d);
                   return upper(std::abs(2 * d.alpha * d.M * (d.k * d.e + d.gamma) + 1.0));
                 }});
  out.push_back({"volumetric-identities", 1e-12, false, true, false, {"isometry"},
                 [p0](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto v = volumetric_map(p0, p.point()[0], p.point()[2]);
                   return upper(std::max(v.radius_identity_residual, v.poly_identity_residual));
                 }});
  out.push_back({"conformal-factor", 1e-10, false, true, false, {"isometry"},
                 [p0](const ChartContext&, PointData& p, std::mt19937_64&) {
                   return upper(conformal_factor_residual(p0, p.point()[0], p.point()[2]));
                 }});
  out.push_back({"cauchy-riemann", 1e-8, false, true, false, {"isometry"},
                 [p0](const ChartContext&, PointData& p, std::mt19937_64&) {
                   return upper(cauchy_riemann_residual(p0, p.point()[0], p.point()[2]));
                 }});
}

// pinned readings of the Cartesian-coordinate displays; verified against the
// polar chart by exact pushforward
void add_cartesian_checks(std::vector<CheckDef>& out, const ChartContext& cc) {
  const TaubNutParams tn = *cc.taubnut;
  out.push_back({"cartesian-metric", 1e-10, false, true, false, {"cartesian"},
                 [tn](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const double u = p.point()[0], v = p.point()[1];
                   const double t1 = p.point()[2], t2 = p.point()[3];
                   const double k = tn.k, M = tn.M;
                   const double x1 = v * std::cos(t1), y1 = v * std::sin(t1);
                   const double x2 = u * std::cos(t2), y2 = u * std::sin(t2);
                   const double u2 = x2 * x2 + y2 * y2, v2 = x1 * x1 + y1 * y1;
                   const double D = 1 + (1 + k) * u2 + (1 - k) * v2;
                   const double cu = 1 + (1 + k) * u2;  // 1+(1+k)u^2
                   const double cv = 1 + (1 - k) * v2;
                   const double mix = 2 + (1 - k * k) * (u2 + v2);
                   tensor::DMat gc;
                   gc.dim = 4;
                   gc(0, 0) = 2 * cu + 2 * (1 - k) * x1 * x1 +
                              (2 * (k - 1) * y1 * y1 * cu + 2 * y1 * y1 * (1 + k) * (1 + k) * u2) / D;
                   gc(0, 1) = 2 * (1 - k) * x1 * y1 - 2 * (1 + k) * (1 + k) * u2 * x1 * y1 / D +
                              2 * cu * (1 - k) * x1 * y1 / D;
                   gc(0, 2) = 2 * y1 * y2 * mix / D;
                   gc(0, 3) = -2 * y1 * x2 * mix / D;
                   gc(1, 1) = 2 * cu + 2 * (1 - k) * y1 * y1 +
                              (2 * cu * (k - 1) * x1 * x1 + 2 * x1 * x1 * (1 + k) * (1 + k) * u2) / D;
                   gc(1, 2) = -2 * x1 * y2 * mix / D;
                   gc(1, 3) = 2 * x1 * x2 * mix / D;
                   gc(2, 2) = 2 * cv + 2 * (1 + k) * x2 * x2 +
                              (-2 * (k + 1) * y2 * y2 * cv + 2 * y2 * y2 * (1 - k) * (1 - k) * v2) / D;
                   gc(2, 3) = 2 * (1 + k) * x2 * y2 - 2 * (1 - k) * (1 - k) * v2 * x2 * y2 / D +
                              2 * cv * (1 + k) * x2 * y2 / D;
                   gc(3, 3) = 2 * cv + 2 * (1 + k) * y2 * y2 +
                              (2 * cv * (-k - 1) * x2 * x2 + 2 * x2 * x2 * (1 - k) * (1 - k) * v2) / D;
                   for (int i = 0; i < 4; ++i)
                     for (int j = 0; j < i; ++j) gc(i, j) = gc(j, i);
                   for (int i = 0; i < 4; ++i)
                     for (int j = 0; j < 4; ++j) gc(i, j) /= M;
                   // jacobian d(x1,y1,x2,y2)/d(u,v,th1,th2)
                   double Jm[4][4] = {{0, std::cos(t1), -v * std::sin(t1), 0},
                                      {0, std::sin(t1), v * std::cos(t1), 0},
                                      {std::cos(t2), 0, 0, -u * std::sin(t2)},
                                      {std::sin(t2), 0, 0, u * std::cos(t2)}};
                   tensor::DMat pulled;
                   pulled.dim = 4;
                   for (int al = 0; al < 4; ++al)
                     for (int be = 0; be < 4; ++be) {
                       double s = 0;
                       for (int a = 0; a < 4; ++a)
                         for (int b = 0; b < 4; ++b) s += gc(a, b) * Jm[a][al] * Jm[b][be];
                       pulled(al, be) = s;
                     }
                   const auto& g = p.pack().g;
                   double diff2 = 0;
                   for (int i = 0; i < 4; ++i)
                     for (int j = 0; j < 4; ++j) diff2 += (pulled(i, j) - g(i, j)) * (pulled(i, j) - g(i, j));
                   return upper(std::sqrt(diff2) / (1.0 + tensor::frob(g)));
                 }});
  out.push_back({"cartesian-omega", 1e-10, false, true, false, {"cartesian"},
                 [tn](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const double u = p.point()[0], v = p.point()[1];
                   const double t1 = p.point()[2], t2 = p.point()[3];
                   const double k = tn.k, M = tn.M;
                   const double x1 = v * std::cos(t1), y1 = v * std::sin(t1);
                   const double x2 = u * std::cos(t2), y2 = u * std::sin(t2);
                   const double u2 = x2 * x2 + y2 * y2, v2 = x1 * x1 + y1 * y1;
                   // catalog sign: omega_J = -(2/M) [display]
                   tensor::DMat oc;
                   oc.dim = 4;
                   const double f = -2.0 / M;
                   oc(0, 1) = f * (1 + (1 + k) * u2);
                   oc(2, 3) = f * (1 + (1 - k) * v2);
                   oc(0, 2) = f * ((1 + k) * x2 * y1 - (1 - k) * x1 * y2);
                   oc(0, 3) = f * ((1 + k) * y1 * y2 + (1 - k) * x1 * x2);
                   oc(1, 2) = f * (-(1 + k) * x1 * x2 - (1 - k) * y1 * y2);
                   oc(1, 3) = f * (-(1 + k) * x1 * y2 + (1 - k) * x2 * y1);
                   for (int i = 0; i < 4; ++i)
                     for (int j = 0; j < i; ++j) oc(i, j) = -oc(j, i);
                   double Jm[4][4] = {{0, std::cos(t1), -v * std::sin(t1), 0},
                                      {0, std::sin(t1), v * std::cos(t1), 0},
                                      {std::cos(t2), 0, 0, -u * std::sin(t2)},
                                      {std::sin(t2), 0, 0, u * std::cos(t2)}};
                   tensor::DMat pulled;
                   pulled.dim = 4;
                   for (int al = 0; al < 4; ++al)
                     for (int be = 0; be < 4; ++be) {
                       double s = 0;
                       for (int a = 0; a < 4; ++a)
                         for (int b = 0; b < 4; ++b) s += oc(a, b) * Jm[a][al] * Jm[b][be];
                       pulled(al, be) = s;
                     }
                   const auto& om = p.form("omega_J");
                   double diff2 = 0, ref2 = 0;
                   const auto& ts = tensor::FormValue::tuples(4, 2);
                   for (size_t c2 = 0; c2 < ts.size(); ++c2) {
                     const double val = om.comps[c2].value();
                     const double d = pulled(ts[c2][0], ts[c2][1]) - val;
                     diff2 += d * d;
                     ref2 += val * val;
                   }
                   return upper(std::sqrt(diff2) / (1.0 + std::sqrt(ref2)));
                 }});
}

void add_exceptional_checks(std::vector<CheckDef>& out) {
  out.push_back({"i-display-composition", 1e-12, false, true, false, {"hermitian"},
                 [](const ChartContext& c, PointData& p, std::mt19937_64&) {
                   const auto a = eval_vector_values(c.spec, *c.spec.find_vector("I_du_display"), p.ectx());
                   const auto b = eval_vector_values(c.spec, *c.spec.find_vector("I_dth2_display"), p.ectx());
                   return upper(std::abs(a[3] * b[0] + 1.0));
                 }});
  out.push_back({"phi-form-closed", 1e-10, false, true, false, {"calabi"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto half_sum = tensor::form_scale(
                       tensor::form_add(p.form("omega_J"), p.form("omega_I")), 0.5);
                   return upper(form_values_residual(half_sum, p.form("phi_form")));
                 }});
}

void add_taubnut_flat_check(std::vector<CheckDef>& out) {
  out.push_back({"ricci-flat", 1e-8, false, true, false, {"curvature"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto& pk = p.pack();
                   return upper(tensor::frob(pk.ricci) / (1.0 + pk.riemann_frob()));
                 }});
}

void add_burns_checks(std::vector<CheckDef>& out) {
  using std::complex_literals::operator""i;
  out.push_back({"deldelbar-potential", 1e-10, false, true, false, {"complex-forms"},
                 [](const ChartContext& c, PointData& p, std::mt19937_64&) {
                   const auto H = geom::del_delbar(*c.spec.find_scalar("potential"), c.spec, p.point());
                   const auto W = geom::complex_coefficients(p.form("omega_J"));
                   double scale = 0;
                   for (int a = 0; a < 2; ++a)
                     for (int b = 0; b < 2; ++b) scale += std::abs(H[a][b]);
                   const double r = std::max({std::abs(W.zz + 1.0i * H[0][0]), std::abs(W.zu + 1.0i * H[0][1]),
                                              std::abs(W.uz + 1.0i * H[1][0]), std::abs(W.uu + 1.0i * H[1][1]),
                                              W.offdiag});
                   return upper(r / (1.0 + scale));
                 }});
  out.push_back({"omega-squared", 1e-9, false, true, false, {"complex-forms"},
                 [](const ChartContext& c, PointData& p, std::mt19937_64&) {
                   const double m = c.spec.param("m");
                   const auto W = geom::complex_coefficients(p.form("omega_J"));
                   // display-convention coefficients: paper = i * catalog
                   const auto P = 1.0i * W.zz, Q = 1.0i * W.uu, R = 1.0i * W.uz, S = 1.0i * W.zu;
                   const std::complex<double> top = 2.0 * (P * Q - R * S);
                   const double z2 = p.point()[0] * p.point()[0] + p.point()[1] * p.point()[1];
                   const double q2 = p.point()[2] * p.point()[2] + p.point()[3] * p.point()[3];
                   const double expect = 2.0 * (z2 + m / (1.0 + q2));
                   return upper(std::abs(top - expect) / (1.0 + std::abs(expect)));
                 }});
  out.push_back({"rho-wedge-omega", 1e-10, false, true, false, {"complex-forms"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto Wo = geom::complex_coefficients(p.form("omega_J"));
                   const auto Wr = geom::complex_coefficients(p.form("rho_closed"));
                   const auto Po = 1.0i * Wo.zz, Qo = 1.0i * Wo.uu, Ro = 1.0i * Wo.uz, So = 1.0i * Wo.zu;
                   const auto Pr = 1.0i * Wr.zz, Qr = 1.0i * Wr.uu, Rr = 1.0i * Wr.uz, Sr = 1.0i * Wr.zu;
                   const std::complex<double> top = Po * Qr + Qo * Pr - Ro * Sr - So * Rr;
                   const double scale = std::abs(Po * Qr) + std::abs(Qo * Pr) + std::abs(Ro * Sr) +
                                        std::abs(So * Rr);
                   return upper(std::abs(top) / (1.0 + scale));
                 }});
  out.push_back({"rho-squared", 1e-9, false, true, false, {"complex-forms"},
                 [](const ChartContext& c, PointData& p, std::mt19937_64&) {
                   const double m = c.spec.param("m");
                   const auto Wo = geom::complex_coefficients(p.form("omega_J"));
                   const auto Wr = geom::complex_coefficients(p.form("rho_closed"));
                   const auto Po = 1.0i * Wo.zz, Qo = 1.0i * Wo.uu, Ro = 1.0i * Wo.uz, So = 1.0i * Wo.zu;
                   const auto Pr = 1.0i * Wr.zz, Qr = 1.0i * Wr.uu, Rr = 1.0i * Wr.uz, Sr = 1.0i * Wr.zu;
                   const double z2 = p.point()[0] * p.point()[0] + p.point()[1] * p.point()[1];
                   const double q2 = p.point()[2] * p.point()[2] + p.point()[3] * p.point()[3];
                   const double N = z2 * (1 + q2) + m;
                   const double kap = m / (N * N);
                   const std::complex<double> rho2 = 2.0 * (Pr * Qr - Rr * Sr);
                   const std::complex<double> om2 = 2.0 * (Po * Qo - Ro * So);
                   return upper(std::abs(rho2 + kap * kap * om2) / (1.0 + std::abs(rho2)));
                 }});
  out.push_back({"rho-pipeline", 1e-7, false, true, false, {"complex-forms"},
                 [](const ChartContext&, PointData& p, std::mt19937_64&) {
                   const auto rho = geom::ricci_form(p.pack(), p.endo_of("omega_J"));
                   const auto& closed = p.form("rho_closed");
                   const auto& ts = tensor::FormValue::tuples(4, 2);
                   double diff2 = 0, ref2 = 0;
                   for (size_t c2 = 0; c2 < ts.size(); ++c2) {
                     const double want = closed.comps[c2].value();
                     const double got = rho(ts[c2][0], ts[c2][1]);
                     diff2 += (got - want) * (got - want);
                     ref2 += want * want;
                   }
                   return upper(std::sqrt(diff2) / (1.0 + std::sqrt(ref2)));
                 }});
}

void add_controls(std::vector<CheckDef>& out, const ChartContext& cc) {
  if (cc.ortho && cc.ortho->A == 0.0) {
    const OrthotoricParams p0 = *cc.ortho;
    out.push_back({"control-cubic-scalar", 1e-3, true, false, true, {"controls"},
                   [p0](const ChartContext&, PointData&, std::mt19937_64& rng) {
                     const dsl::ChartSpec cubic = orthotoric_cubic_chart(p0, 0.1);
                     const auto pts = verify::sample_points(cubic, 20, rng(), 1e-6);
                     double worst = 0;
                     for (const auto& q : pts) {
                       const auto pk = tensor::curvature_pack(cubic, q, 2);
                       worst = std::max(worst, std::abs(pk.scalar) / (1.0 + pk.riemann_frob()));
                     }
                     return upper(worst);
                   }});
    out.push_back({"control-dictionary-perturbed", 1e-3, true, true, true, {"controls"},
                   [p0](const ChartContext&, PointData& p, std::mt19937_64&) {
                     Dictionary d = parameter_dictionary(p0.a, p0.b, p0.c, p0.d);
                     d.M *= 1.01;
                     return upper(conformal_factor_residual(p0, d, p.point()[0], p.point()[2]));
                   }});
    if (p0.a != p0.c) {
      out.push_back({"control-calabi", 1e-3, true, true, true, {"controls"},
                     [](const ChartContext&, PointData& p, std::mt19937_64&) {
                       const auto plus = geom::calabi_residual(p.form("omega_J"), p.form("omega_I"),
                                                               geom::CalabiSign::Plus);
                       const auto minus = geom::calabi_residual(p.form("omega_J"), p.form("omega_I"),
                                                                geom::CalabiSign::Minus);
                       return upper(std::min(plus.residual, minus.residual));
                     }});
    }
  }
  if (cc.spec.find_form("omega_J")) {
    out.push_back({"control-qch-skew", 1e-3, true, true, true, {"controls"},
                   [](const ChartContext& c, PointData& p, std::mt19937_64& rng) {
                     Plane pl = distribution_plane(c, p);
                     // skew the plane away from J-invariance
                     int axis = 0;
                     double best = -1;
                     for (int i = 0; i < 4; ++i) {
                       const double overlap = std::abs(pl.d1[i]) + std::abs(pl.d2[i]);
                       if (best < 0 || overlap < best) {
                         best = overlap;
                         axis = i;
                       }
                     }
                     pl.d2[axis] += 0.35 * (1.0 + std::abs(pl.d2[axis]));
                     try {
                       const double r = geom::qch_residual(p.pack(), p.endo_of("omega_J"), pl.d1,
                                                           pl.d2, 32, rng);
                       return upper(r);
                     } catch (const contract_error&) {
                       CheckOutcome o;
                       o.residual = 1.0;
                       o.note = "rejected: not J-invariant";
                       return o;
                     }
                   }});
    out.push_back({"control-g2-random-endo", 1e-3, true, true, true, {"controls"},
                   [](const ChartContext&, PointData& p, std::mt19937_64& rng) {
                     geom::Endo A;
                     A.dim = p.chart().dim();
                     for (int i = 0; i < A.dim; ++i)
                       for (int j = 0; j < A.dim; ++j)
                         A.at(i, j) = jets::Jet::constant(2 * uniform01(rng) - 1, A.dim, 1);
                     return upper(geom::gray2_residual(p.pack(), A, 16, rng));
                   }});
    out.push_back({"control-nijenhuis-perturbed", 1e-4, true, true, true, {"controls"},
                   [](const ChartContext&, PointData& p, std::mt19937_64&) {
                     geom::Endo J = p.endo_of("omega_J");
                     const int order = J.at(0, 0).order();
                     J.at(0, 1) += 0.01 * jets::Jet::variable(p.point()[0], 0, J.dim, order);
                     return upper(geom::nijenhuis_residual(J));
                   }});
  }
  out.push_back({"control-nonkilling", 1e-3, true, true, true, {"controls"},
                 [](const ChartContext& c, PointData& p, std::mt19937_64&) {
                   std::vector<dsl::Expr> X;
                   for (int i = 0; i < c.spec.dim(); ++i)
                     X.push_back(i == 0 ? dsl::make_coord(0) : dsl::make_constant(0.0));
                   const auto L = tensor::lie_derivative_metric(c.spec, X, p.point());
                   return upper(tensor::frob(L) / (1.0 + tensor::frob(p.pack().g)));
                 }});
}

}  // namespace

std::vector<CheckDef> identity_suite(const ChartContext& cc) {
  std::vector<CheckDef> out;
  add_common_checks(out);
  if (cc.spec.dim() == 4) add_dim4_checks(out);
  if (cc.spec.find_form("omega_J")) add_kahler_checks(out, cc);
  if (cc.spec.find_form("omega_I")) {
    add_hermitian_checks(out, cc);
    if (cc.spec.find_form("omega_J")) {
      add_calabi_checks(out, cc);
      add_qch_checks(out);
    }
  }
  if (cc.ortho) add_orthotoric_checks(out, cc);
  if (cc.taubnut) {
    add_cartesian_checks(out, cc);
    if (cc.taubnut->k == 0.0) add_taubnut_flat_check(out);
    if (cc.taubnut->k == 1.0 || cc.taubnut->k == -1.0) add_exceptional_checks(out);
  }
  if (cc.burns_m) add_burns_checks(out);
  add_controls(out, cc);
  return out;
}

std::vector<CheckDef> identity_suite(const std::string& catalog_name) {
  return identity_suite(make_chart_context(catalog_chart(catalog_name)));
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> s = {"full",     "curvature", "kahler",        "hermitian",
                                             "calabi",   "qch",       "isometry",      "cartesian",
                                             "complex-forms", "controls"};
  return s;
}

}  // namespace kv::catalog

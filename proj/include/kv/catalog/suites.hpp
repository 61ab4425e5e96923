#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include "kv/catalog/catalog.hpp"
#include "kv/geom/endo.hpp"
#include "kv/tensor/curvature.hpp"
#include "kv/tensor/forms.hpp"

namespace kv::catalog {

// Lazily computed per-point evaluation bundle shared by all checks at one
// sample point.
class PointData {
 public:
  PointData(const dsl::ChartSpec& chart, std::vector<double> pt, int order);

  const dsl::ChartSpec& chart() const { return *chart_; }
  const std::vector<double>& point() const { return pt_; }
  int order() const { return order_; }

  const dsl::EvalContext& ectx() const;
  const tensor::JetMatrix& gjets() const;
  const tensor::JetMatrix& ginv_jets() const;
  const tensor::CurvaturePack& pack() const;
  const tensor::FormValue& form(const std::string& name) const;
  const geom::Endo& endo_of(const std::string& form_name) const;

 private:
  const dsl::ChartSpec* chart_;
  std::vector<double> pt_;
  int order_;
  mutable std::optional<dsl::EvalContext> ectx_;
  mutable std::optional<tensor::JetMatrix> gjets_;
  mutable std::optional<tensor::JetMatrix> ginv_;
  mutable std::optional<tensor::CurvaturePack> pack_;
  mutable std::map<std::string, tensor::FormValue> forms_;
  mutable std::map<std::string, geom::Endo> endos_;
};

struct CheckOutcome {
  double residual = 0;
  bool pass = false;
  bool vacuous = false;
  std::string note;
};

struct ChartContext;

struct CheckDef {
  std::string id;
  double tol = 1e-8;
  // pass iff residual <= tol (upper) or residual >= tol (lower; negative
  // controls and non-degeneracy detectors)
  bool lower_bound = false;
  bool per_point = true;
  bool control = false;
  std::vector<std::string> suites;
  std::function<CheckOutcome(const ChartContext&, PointData&, std::mt19937_64&)> run;
};

// A chart plus its inferred role bindings; built once per verification run.
struct ChartContext {
  dsl::ChartSpec spec;
  std::string hash;
  std::vector<std::pair<std::string, std::string>> killing;  // (potential scalar, vector field)
  std::optional<OrthotoricParams> ortho;
  std::optional<TaubNutParams> taubnut;
  std::optional<double> burns_m;
};

ChartContext make_chart_context(dsl::ChartSpec spec);

// Ordered list of applicable named checks for this chart (controls included,
// marked; the runner filters them behind --controls).
std::vector<CheckDef> identity_suite(const ChartContext& ctx);
std::vector<CheckDef> identity_suite(const std::string& catalog_name);

const std::vector<std::string>& known_suites();

}  // namespace kv::catalog

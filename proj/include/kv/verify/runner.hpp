#pragma once

#include <map>

#include "kv/catalog/suites.hpp"
#include "kv/verify/report.hpp"

namespace kv::verify {

struct RunConfig {
  std::string suite = "full";
  int n_points = 100;
  std::uint64_t seed = 42;
  int order = 2;
  double margin = 1e-6;
  bool controls = false;
  int threads = 1;
  std::map<std::string, double> tol_overrides;
};

// Executes every applicable check of the chart's identity suite over sampled
// points.  Entries are sorted by (check_id, point index); the report is
// byte-identical across runs (and thread counts) for fixed inputs.
CheckReport run_suite(const catalog::ChartContext& ctx, const RunConfig& cfg);

// Resolve a chart reference: catalog name, or a path to a chart file.
catalog::ChartContext resolve_chart(const std::string& name_or_file);

}  // namespace kv::verify

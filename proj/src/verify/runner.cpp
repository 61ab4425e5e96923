#include "kv/verify/runner.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "kv/dsl/parser.hpp"
#include "kv/error.hpp"
#include "kv/verify/sample.hpp"

namespace kv::verify {

namespace {

std::uint64_t fnv_mix(std::uint64_t seed, const std::string& s, int index) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  h ^= static_cast<std::uint64_t>(index) + 0x9e3779b97f4a7c15ull;
  h *= 1099511628211ull;
  return h;
}

bool in_suite(const catalog::CheckDef& c, const std::string& suite) {
  if (suite == "full") return !c.control;
  if (suite == "controls") return c.control;
  for (const auto& s : c.suites)
    if (s == suite) return true;
  return false;
}

}  // namespace

CheckReport run_suite(const catalog::ChartContext& ctx, const RunConfig& cfg) {
  bool suite_known = false;
  for (const auto& s : catalog::known_suites()) suite_known = suite_known || s == cfg.suite;
  if (!suite_known) throw contract_error("unknown suite: " + cfg.suite);

  std::vector<catalog::CheckDef> checks;
  for (auto& c : catalog::identity_suite(ctx)) {
    if (!in_suite(c, cfg.suite)) continue;
    if (c.control && !(cfg.controls || cfg.suite == "controls")) continue;
    const auto it = cfg.tol_overrides.find(c.id);
    if (it != cfg.tol_overrides.end()) c.tol = it->second;
    checks.push_back(std::move(c));
  }

  const auto points = sample_points(ctx.spec, cfg.n_points, cfg.seed, cfg.margin);

  CheckReport rep;
  rep.suite = cfg.suite;
  rep.chart = ctx.spec.name;
  rep.chart_hash = ctx.hash;
  for (size_t i = 0; i < ctx.spec.param_names.size(); ++i)
    rep.params.emplace_back(ctx.spec.param_names[i], ctx.spec.param_values[i]);
  rep.seed = cfg.seed;
  rep.n_points = cfg.n_points;
  rep.order = cfg.order;

  // tasks: one per (point, applicable checks); per-point data shared within a task
  std::vector<std::vector<ReportEntry>> slots(points.size());
  std::atomic<size_t> next{0};
  const auto worker = [&]() {
    while (true) {
      const size_t pi = next.fetch_add(1);
      if (pi >= points.size()) break;
      catalog::PointData data(ctx.spec, points[pi], cfg.order);
      for (const auto& c : checks) {
        if (!c.per_point && pi != 0) continue;
        ReportEntry e;
        e.check_id = c.id;
        e.point_index = static_cast<int>(pi);
        e.point = points[pi];
        e.tolerance = c.tol;
        e.lower_bound = c.lower_bound;
        try {
          std::mt19937_64 rng(fnv_mix(cfg.seed, c.id, static_cast<int>(pi)));
          const catalog::CheckOutcome o = c.run(ctx, data, rng);
          e.residual = o.residual;
          e.vacuous = o.vacuous;
          e.note = o.note;
          e.pass = o.vacuous || (c.lower_bound ? o.residual >= c.tol : o.residual <= c.tol);
        } catch (const std::exception& ex) {
          e.error = ex.what();
          e.pass = false;
          e.residual = std::numeric_limits<double>::infinity();
        }
        slots[pi].push_back(std::move(e));
      }
    }
  };
  const int nthreads = std::max(1, cfg.threads);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (auto& s : slots)
    for (auto& e : s) rep.entries.push_back(std::move(e));
  std::stable_sort(rep.entries.begin(), rep.entries.end(), [](const ReportEntry& a, const ReportEntry& b) {
    if (a.check_id != b.check_id) return a.check_id < b.check_id;
    return a.point_index < b.point_index;
  });
  for (const auto& e : rep.entries) {
    if (e.pass)
      rep.n_pass++;
    else
      rep.n_fail++;
    if (!e.lower_bound && !e.vacuous && e.error.empty())
      rep.max_residual = std::max(rep.max_residual, e.residual);
  }
  return rep;
}

catalog::ChartContext resolve_chart(const std::string& name_or_file) {
  if (catalog::is_catalog_chart(name_or_file))
    return catalog::make_chart_context(catalog::catalog_chart(name_or_file));
  std::ifstream in(name_or_file, std::ios::binary);
  if (!in) throw contract_error("unknown chart (not in catalog, not a readable file): " + name_or_file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return catalog::make_chart_context(dsl::parse_chart(ss.str()));
}

}  // namespace kv::verify

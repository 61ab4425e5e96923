// kahler-verify: residual certification for the built-in scalar-flat Kahler
// surface charts and user chart files.
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kv/dsl/parser.hpp"
#include "kv/error.hpp"
#include "kv/verify/runner.hpp"

namespace {

int run_verify(const std::string& chart_ref, kv::verify::RunConfig cfg, const std::string& format,
               const std::string& out_path) {
  const kv::catalog::ChartContext ctx = kv::verify::resolve_chart(chart_ref);
  const kv::verify::CheckReport rep = kv::verify::run_suite(ctx, cfg);
  kv::verify::ReportFormat fmt = kv::verify::ReportFormat::Json;
  if (format == "csv") fmt = kv::verify::ReportFormat::Csv;
  else if (format == "markdown") fmt = kv::verify::ReportFormat::Markdown;
  else if (format != "json") throw kv::contract_error("unknown format: " + format);
  if (out_path.empty())
    std::cout << kv::verify::render_report(rep, fmt);
  else
    kv::verify::emit_report(rep, fmt, out_path);
  std::cerr << rep.chart << " [" << rep.suite << "]: " << rep.n_pass << " passed, " << rep.n_fail
            << " failed, max residual " << rep.max_residual << "\n";
  return rep.n_fail == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification of Kahler surface chart identities"};
  app.require_subcommand(1);

  std::string chart_ref, format = "json", out_path;
  kv::verify::RunConfig cfg;
  std::vector<std::string> tol_kv;

  auto* verify = app.add_subcommand("verify", "run a check suite over sampled chart points");
  verify->add_option("chart", chart_ref, "catalog chart name or chart file path")->required();
  verify->add_option("--suite", cfg.suite, "check suite (see list-suites)")->default_val("full");
  verify->add_option("--points", cfg.n_points, "number of sample points")->default_val(100);
  verify->add_option("--seed", cfg.seed, "sampling / residual RNG seed")->default_val(42);
  verify->add_option("--order", cfg.order, "jet truncation order")->default_val(2)
      ->check(CLI::Range(2, 3));
  verify->add_option("--margin", cfg.margin, "domain rejection margin")->default_val(1e-6);
  verify->add_option("--tol", tol_kv, "per-check tolerance override check=value")
      ->take_all();
  verify->add_option("--format", format, "json|csv|markdown")->default_val("json");
  verify->add_option("--out", out_path, "write the report to a file instead of stdout");
  verify->add_flag("--controls", cfg.controls, "also run the negative-control checks");
  verify->add_option("--threads", cfg.threads, "worker threads (deterministic merge)")
      ->default_val(1);

  auto* list_charts = app.add_subcommand("list-charts", "list built-in charts");
  auto* list_suites = app.add_subcommand("list-suites", "list known check suites");
  std::string dump_name;
  auto* dump = app.add_subcommand("dump-chart", "emit a catalog chart as DSL text");
  dump->add_option("chart", dump_name, "catalog chart name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list_charts->parsed()) {
      for (const auto& n : kv::catalog::catalog_names()) std::cout << n << "\n";
      return 0;
    }
    if (list_suites->parsed()) {
      for (const auto& s : kv::catalog::known_suites()) std::cout << s << "\n";
      return 0;
    }
    if (dump->parsed()) {
      std::cout << kv::dsl::print_chart(kv::catalog::catalog_chart(dump_name));
      return 0;
    }
    for (const auto& kvs : tol_kv) {
      const auto eq = kvs.find('=');
      if (eq == std::string::npos) throw kv::contract_error("bad --tol (want check=value): " + kvs);
      cfg.tol_overrides[kvs.substr(0, eq)] = std::stod(kvs.substr(eq + 1));
    }
    return run_verify(chart_ref, cfg, format, out_path);
  } catch (const kv::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const kv::contract_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

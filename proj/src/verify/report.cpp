#include "kv/verify/report.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "kv/error.hpp"

namespace kv::verify {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void json_string(std::string& out, const std::string& s) {
  out += '"';
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}

std::string render_json(const CheckReport& r) {
  std::string o;
  o += "{\n";
  o += "  \"tool_version\": ";
  json_string(o, r.tool_version);
  o += ",\n  \"chart\": ";
  json_string(o, r.chart);
  o += ",\n  \"chart_hash\": ";
  json_string(o, r.chart_hash);
  o += ",\n  \"params\": {";
  for (size_t i = 0; i < r.params.size(); ++i) {
    if (i) o += ", ";
    json_string(o, r.params[i].first);
    o += ": " + num(r.params[i].second);
  }
  o += "},\n  \"suite\": ";
  json_string(o, r.suite);
  o += ",\n  \"seed\": " + std::to_string(r.seed);
  o += ",\n  \"points\": " + std::to_string(r.n_points);
  o += ",\n  \"order\": " + std::to_string(r.order);
  o += ",\n  \"entries\": [\n";
  for (size_t i = 0; i < r.entries.size(); ++i) {
    const auto& e = r.entries[i];
    o += "    {\"check\": ";
    json_string(o, e.check_id);
    o += ", \"point_index\": " + std::to_string(e.point_index);
    o += ", \"point\": [";
    for (size_t k = 0; k < e.point.size(); ++k) {
      if (k) o += ", ";
      o += num(e.point[k]);
    }
    o += "], \"residual\": " + num(e.residual);
    o += ", \"tolerance\": " + num(e.tolerance);
    o += std::string(", \"bound\": ") + (e.lower_bound ? "\"lower\"" : "\"upper\"");
    o += std::string(", \"pass\": ") + (e.pass ? "true" : "false");
    o += std::string(", \"vacuous\": ") + (e.vacuous ? "true" : "false");
    o += ", \"note\": ";
    json_string(o, e.note);
    o += ", \"error\": ";
    json_string(o, e.error);
    o += "}";
    if (i + 1 < r.entries.size()) o += ",";
    o += "\n";
  }
  o += "  ],\n";
  o += "  \"summary\": {\"n_pass\": " + std::to_string(r.n_pass) +
       ", \"n_fail\": " + std::to_string(r.n_fail) + ", \"max_residual\": " + num(r.max_residual) +
       "}\n";
  o += "}\n";
  return o;
}

std::string render_csv(const CheckReport& r) {
  std::string o = "check,point_index,p0,p1,p2,p3,residual,tolerance,bound,pass,vacuous,error\n";
  for (const auto& e : r.entries) {
    o += e.check_id + "," + std::to_string(e.point_index);
    for (int k = 0; k < 4; ++k)
      o += "," + (k < static_cast<int>(e.point.size()) ? num(e.point[k]) : std::string());
    o += "," + num(e.residual) + "," + num(e.tolerance);
    o += std::string(",") + (e.lower_bound ? "lower" : "upper");
    o += std::string(",") + (e.pass ? "1" : "0") + "," + (e.vacuous ? "1" : "0");
    std::string err = e.error;
    for (auto& c : err)
      if (c == ',' || c == '\n') c = ';';
    o += "," + err + "\n";
  }
  return o;
}

std::string render_markdown(const CheckReport& r) {
  std::string o;
  o += "# " + r.chart + " / " + r.suite + "\n\n";
  o += "tool: " + r.tool_version + "  \nchart hash: `" + r.chart_hash + "`  \nseed: " +
       std::to_string(r.seed) + ", points: " + std::to_string(r.n_points) +
       ", order: " + std::to_string(r.order) + "\n\n";
  o += "| check | n | max residual | tolerance | status |\n";
  o += "|---|---|---|---|---|\n";
  std::string last;
  for (size_t i = 0; i < r.entries.size();) {
    const std::string& id = r.entries[i].check_id;
    int n = 0;
    double worst = 0;
    bool ok = true, lower = r.entries[i].lower_bound;
    double tol = r.entries[i].tolerance;
    size_t j = i;
    for (; j < r.entries.size() && r.entries[j].check_id == id; ++j) {
      ++n;
      const auto& e = r.entries[j];
      if (lower)
        worst = (n == 1) ? e.residual : std::min(worst, e.residual);
      else
        worst = std::max(worst, e.residual);
      ok = ok && e.pass;
    }
    o += "| " + id + " | " + std::to_string(n) + " | " + num(worst) + " | " +
         (lower ? "> " : "< ") + num(tol) + " | " + (ok ? "pass" : "FAIL") + " |\n";
    i = j;
  }
  o += "\n" + std::to_string(r.n_pass) + " passed, " + std::to_string(r.n_fail) + " failed\n";
  return o;
}

}  // namespace

std::string render_report(const CheckReport& r, ReportFormat fmt) {
  switch (fmt) {
    case ReportFormat::Json: return render_json(r);
    case ReportFormat::Csv: return render_csv(r);
    case ReportFormat::Markdown: return render_markdown(r);
  }
  throw contract_error("bad report format");
}

void emit_report(const CheckReport& r, ReportFormat fmt, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot open report path: " + path);
  out << render_report(r, fmt);
  if (!out.good()) throw error("short write emitting report: " + path);
}

CheckReport parse_report_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  CheckReport r;
  r.tool_version = j.at("tool_version").get<std::string>();
  r.chart = j.at("chart").get<std::string>();
  r.chart_hash = j.at("chart_hash").get<std::string>();
  for (const auto& [k, v] : j.at("params").items()) r.params.emplace_back(k, v.get<double>());
  r.suite = j.at("suite").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.n_points = j.at("points").get<int>();
  r.order = j.at("order").get<int>();
  for (const auto& je : j.at("entries")) {
    ReportEntry e;
    e.check_id = je.at("check").get<std::string>();
    e.point_index = je.at("point_index").get<int>();
    for (const auto& p : je.at("point")) e.point.push_back(p.get<double>());
    e.residual = je.at("residual").get<double>();
    e.tolerance = je.at("tolerance").get<double>();
    e.lower_bound = je.at("bound").get<std::string>() == "lower";
    e.pass = je.at("pass").get<bool>();
    e.vacuous = je.at("vacuous").get<bool>();
    e.note = je.at("note").get<std::string>();
    e.error = je.at("error").get<std::string>();
    r.entries.push_back(std::move(e));
  }
  r.n_pass = j.at("summary").at("n_pass").get<int>();
  r.n_fail = j.at("summary").at("n_fail").get<int>();
  r.max_residual = j.at("summary").at("max_residual").get<double>();
  return r;
}

}  // namespace kv::verify

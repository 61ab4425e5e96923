#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kv::verify {

inline constexpr const char* kToolVersion = "kahler-verify 0.1.0";

struct ReportEntry {
  std::string check_id;
  int point_index = 0;
  std::vector<double> point;
  double residual = 0;
  double tolerance = 0;
  bool lower_bound = false;
  bool pass = false;
  bool vacuous = false;
  std::string note;
  std::string error;
};

struct CheckReport {
  std::string tool_version = kToolVersion;
  std::string suite;
  std::string chart;
  std::string chart_hash;
  std::vector<std::pair<std::string, double>> params;
  std::uint64_t seed = 0;
  int n_points = 0;
  int order = 2;
  std::vector<ReportEntry> entries;  // sorted by (check_id, point_index)
  int n_pass = 0;
  int n_fail = 0;
  double max_residual = 0;
};

enum class ReportFormat { Json, Csv, Markdown };

// Bit-stable serialization: canonical key order, floats at 17 significant digits.
std::string render_report(const CheckReport& r, ReportFormat fmt);
void emit_report(const CheckReport& r, ReportFormat fmt, const std::string& path);

// JSON round-trip (used by tests and downstream consumers).
CheckReport parse_report_json(const std::string& text);

}  // namespace kv::verify

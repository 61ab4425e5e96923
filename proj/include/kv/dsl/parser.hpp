#pragma once

#include <string>

#include "kv/dsl/chart.hpp"

namespace kv::dsl {

// Parse a chart definition (see README for the file format).  Total over
// valid inputs and deterministic; throws kv::parse_error with line/column
// on syntax errors, unknown identifiers, index-range and duplicate
// declarations.
ChartSpec parse_chart(const std::string& text);

// Canonical printer; parse-print-parse is idempotent on its output.
std::string print_chart(const ChartSpec& chart);
std::string print_expr(const Expr& e, const ChartSpec& chart);

// 64-bit FNV-1a of the canonical chart text, as 16 hex digits.
std::string chart_hash(const ChartSpec& chart);

}  // namespace kv::dsl

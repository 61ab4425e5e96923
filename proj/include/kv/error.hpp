#pragma once

#include <stdexcept>
#include <string>

namespace kv {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Point violates a chart's domain constraints, or an elementary function was
// evaluated outside its domain (sqrt/ln of a nonpositive value).
struct domain_error : error {
  using error::error;
};

// Division by a jet whose value part vanishes; signals a sampled point on a
// coordinate singularity such as xi = eta.
struct singular_evaluation : error {
  using error::error;
};

// Caller broke an operation contract (mismatched jet shapes, bad indices,
// non-invariant distribution, unknown chart/suite, ...).
struct contract_error : error {
  using error::error;
};

struct parse_error : error {
  int line;
  int column;
  parse_error(const std::string& msg, int line_, int column_)
      : error(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(column_) + ")"),
        line(line_), column(column_) {}
};

}  // namespace kv

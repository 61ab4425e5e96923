#pragma once

#include <cstdint>
#include <vector>

#include "kv/dsl/chart.hpp"

namespace kv::verify {

// Uniform samples from the chart's per-coordinate box, rejecting points whose
// domain or sampling constraints come within margin of zero.  Deterministic
// for a fixed seed.  Throws kv::domain_error when the acceptance rate falls
// below 1% and kv::contract_error when the chart has no sampling box.
std::vector<std::vector<double>> sample_points(const dsl::ChartSpec& chart, int n,
                                               std::uint64_t seed, double margin);

}  // namespace kv::verify

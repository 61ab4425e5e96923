#include "kv/verify/sample.hpp"

#include <random>

#include "kv/dsl/eval.hpp"
#include "kv/error.hpp"

namespace kv::verify {

std::vector<std::vector<double>> sample_points(const dsl::ChartSpec& chart, int n,
                                               std::uint64_t seed, double margin) {
  if (n < 1) throw contract_error("sample_points: n must be >= 1");
  const int dim = chart.dim();
  for (int c = 0; c < dim; ++c)
    if (chart.box.size() != static_cast<size_t>(dim) || !chart.box[c])
      throw contract_error("chart declares no sampling box for coordinate " + chart.coords[c]);

  std::mt19937_64 rng(seed);
  const auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<std::vector<double>> out;
  out.reserve(n);
  std::vector<double> pt(dim);
  const long max_draws = std::max(1000L, 200L * n);
  long draws = 0;
  while (static_cast<int>(out.size()) < n) {
    if (++draws > max_draws)
      throw domain_error("sample_points: rejection rate above 99% (domain too thin for the box)");
    for (int c = 0; c < dim; ++c) {
      const auto [lo, hi] = *chart.box[c];
      pt[c] = lo + (hi - lo) * uniform();
    }
    bool ok = true;
    try {
      for (const auto& cons : chart.domain)
        ok = ok && dsl::eval_plain(cons, chart, pt) > margin;
      for (const auto& cons : chart.sample_constraints)
        ok = ok && dsl::eval_plain(cons, chart, pt) > margin;
    } catch (const error&) {
      ok = false;
    }
    if (ok) out.push_back(pt);
  }
  return out;
}

}  // namespace kv::verify

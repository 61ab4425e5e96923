#include "kv/jets/fd_oracle.hpp"

#include <vector>

#include "kv/error.hpp"

namespace kv::jets {

DerivativeTable finite_difference_oracle(const std::function<double(std::span<const double>)>& f,
                                         std::span<const double> point, double h) {
  const int n = static_cast<int>(point.size());
  if (n < 1 || n > kMaxVars) throw contract_error("finite_difference_oracle: 1..4 variables");
  if (!(h > 0)) throw contract_error("finite_difference_oracle: h must be positive");

  DerivativeTable t;
  t.nvars = n;
  std::vector<double> p(point.begin(), point.end());
  const auto at = [&](int i, double di, int j, double dj) {
    p.assign(point.begin(), point.end());
    p[i] += di;
    if (j >= 0) p[j] += dj;
    return f(p);
  };

  t.value = f(point);
  for (int i = 0; i < n; ++i) {
    const double fp = at(i, h, -1, 0);
    const double fm = at(i, -h, -1, 0);
    t.gradient[i] = (fp - fm) / (2 * h);
    t.hessian[i][i] = (fp - 2 * t.value + fm) / (h * h);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double fpp = at(i, h, j, h);
      const double fpm = at(i, h, j, -h);
      const double fmp = at(i, -h, j, h);
      const double fmm = at(i, -h, j, -h);
      t.hessian[i][j] = t.hessian[j][i] = (fpp - fpm - fmp + fmm) / (4 * h * h);
    }
  }
  return t;
}

}  // namespace kv::jets

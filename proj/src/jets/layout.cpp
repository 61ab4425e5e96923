#include "kv/jets/layout.hpp"

#include <algorithm>
#include <mutex>

#include "kv/error.hpp"

namespace kv::jets {

namespace {

Layout build(int nvars, int order) {
  Layout L;
  L.nvars = nvars;
  L.order = order;

  std::array<std::uint8_t, kMaxVars> alpha{};
  // enumerate all multi-indices with |alpha| <= order
  std::vector<std::array<std::uint8_t, kMaxVars>> all;
  const auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == nvars) {
      all.push_back(alpha);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      alpha[var] = static_cast<std::uint8_t>(e);
      self(self, var + 1, remaining - e);
    }
    alpha[var] = 0;
  };
  rec(rec, 0, order);

  const auto deg = [nvars](const std::array<std::uint8_t, kMaxVars>& a) {
    int d = 0;
    for (int v = 0; v < nvars; ++v) d += a[v];
    return d;
  };
  std::sort(all.begin(), all.end(), [&](const auto& a, const auto& b) {
    const int da = deg(a), db = deg(b);
    if (da != db) return da < db;
    // reverse-lex: larger leading exponents first, so (1,0) precedes (0,1)
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  });

  L.count = static_cast<int>(all.size());
  L.exponent = std::move(all);
  L.degree.resize(L.count);
  for (int k = 0; k < L.count; ++k) L.degree[k] = static_cast<std::uint8_t>(deg(L.exponent[k]));

  L.shift_up.assign(L.count, {});
  for (int k = 0; k < L.count; ++k) {
    for (int v = 0; v < kMaxVars; ++v) {
      L.shift_up[k][v] = -1;
      if (v >= nvars) continue;
      auto up = L.exponent[k];
      up[v]++;
      if (L.degree[k] + 1 <= order) L.shift_up[k][v] = static_cast<std::int16_t>(L.index_of(up));
    }
  }

  L.cross_begin.assign(L.count + 1, 0);
  std::vector<std::vector<Layout::Pair>> per_slot(L.count);
  for (int i = 0; i < L.count; ++i) {
    if (L.degree[i] == 0) continue;
    for (int j = 0; j < L.count; ++j) {
      if (L.degree[j] == 0) continue;
      if (L.degree[i] + L.degree[j] > order) continue;
      std::array<std::uint8_t, kMaxVars> sum{};
      for (int v = 0; v < nvars; ++v) sum[v] = static_cast<std::uint8_t>(L.exponent[i][v] + L.exponent[j][v]);
      const int k = L.index_of(sum);
      per_slot[k].push_back({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j)});
    }
  }
  for (int k = 0; k < L.count; ++k) {
    L.cross_begin[k] = static_cast<std::uint32_t>(L.cross.size());
    for (const auto& p : per_slot[k]) L.cross.push_back(p);
  }
  L.cross_begin[L.count] = static_cast<std::uint32_t>(L.cross.size());
  return L;
}

}  // namespace

int Layout::index_of(const std::array<std::uint8_t, kMaxVars>& alpha) const {
  for (int k = 0; k < count; ++k) {
    if (exponent[k] == alpha) return k;
  }
  return -1;
}

const Layout& Layout::get(int nvars, int order) {
  if (nvars < 1 || nvars > kMaxVars || order < 1 || order > kMaxOrder)
    throw contract_error("jet layout out of range: nvars in [1,4], order in [1,3] required");
  static std::array<Layout, kMaxVars * kMaxOrder> table;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int n = 1; n <= kMaxVars; ++n)
      for (int p = 1; p <= kMaxOrder; ++p) table[(n - 1) * kMaxOrder + (p - 1)] = build(n, p);
  });
  return table[(nvars - 1) * kMaxOrder + (order - 1)];
}

}  // namespace kv::jets

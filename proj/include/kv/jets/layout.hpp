#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace kv::jets {

inline constexpr int kMaxVars = 4;
inline constexpr int kMaxOrder = 3;
inline constexpr int kMaxCoeffs = 35;  // C(4+3,3)

// Dense coefficient layout for truncated multivariate Taylor expansions:
// multi-indices of total degree <= order, sorted by (degree, reverse-lex),
// so slot 0 is the value and slots 1..nvars are the first partials in
// variable order.  One immutable Layout per (nvars, order) pair, with the
// precomputed tables the kernels need.
struct Layout {
  int nvars = 0;
  int order = 0;
  int count = 0;

  std::vector<std::array<std::uint8_t, kMaxVars>> exponent;  // [slot][var]
  std::vector<std::uint8_t> degree;                          // [slot]

  // truncated-product cross terms: pairs (i, j) with deg(i)>=1, deg(j)>=1 and
  // deg(i)+deg(j) <= order, grouped by output slot k
  struct Pair {
    std::uint16_t i, j;
  };
  std::vector<Pair> cross;
  std::vector<std::uint32_t> cross_begin;  // [count+1]

  // partial derivative: slot k of d/dv lives at shift_down[k][v] with weight
  // exponent[src][v], where src is the slot with alpha + e_v (or -1)
  std::vector<std::array<std::int16_t, kMaxVars>> shift_up;  // [slot][var] -> slot of alpha+e_v or -1

  int index_of(const std::array<std::uint8_t, kMaxVars>& alpha) const;

  static const Layout& get(int nvars, int order);
};

}  // namespace kv::jets

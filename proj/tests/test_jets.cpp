#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kv/error.hpp"
#include "kv/jets/fd_oracle.hpp"
#include "kv/jets/jet.hpp"

using kv::jets::DerivativeTable;
using kv::jets::finite_difference_oracle;
using kv::jets::Jet;

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

}  // namespace

TEST_CASE("seed_variable lays out value and unit gradient") {
  const Jet xi = Jet::variable(2.0, 0, 2, 2);
  CHECK(xi.value() == 2.0);
  CHECK(xi.coeff(1) == 1.0);
  for (int k = 2; k < xi.size(); ++k) CHECK(xi.coeff(k) == 0.0);

  const Jet y = Jet::variable(0.0, 0, 1, 1);
  CHECK(y.value() == 0.0);
  CHECK(y.coeff(1) == 1.0);

  CHECK_THROWS_AS(kv::jets::Layout::get(2, 4), kv::contract_error);
  CHECK_THROWS_AS(Jet::variable(1.0, 3, 2, 2), kv::contract_error);
}

TEST_CASE("x*x at x=3 gives (9, 6, 1)") {
  const Jet x = Jet::variable(3.0, 0, 1, 2);
  const Jet sq = x * x;
  CHECK(sq.value() == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(sq.coeff(1) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(sq.coeff(2) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("a/a is the unit jet") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Jet a = Jet::variable(uniform(rng, 0.5, 4.0), trial % 4, 4, 3);
    a += uniform(rng, -0.2, 0.2) * Jet::variable(uniform(rng, 0.5, 4.0), (trial + 1) % 4, 4, 3);
    const Jet one = a / a;
    CHECK(one.value() == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 1; k < one.size(); ++k) CHECK(std::abs(one.coeff(k)) < 1e-13);
  }
}

TEST_CASE("division by a zero-value jet signals a coordinate singularity") {
  const Jet xi = Jet::variable(1.0, 0, 2, 2);
  const Jet eta = Jet::variable(1.0, 1, 2, 2);
  CHECK_THROWS_AS(1.0 / (xi - eta), kv::singular_evaluation);
}

TEST_CASE("sqrt jet at 4 gives (2, 1/4, -1/64)") {
  const Jet x = Jet::variable(4.0, 0, 1, 2);
  const Jet r = sqrt(x);
  CHECK(r.value() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.coeff(1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(r.coeff(2) == doctest::Approx(-1.0 / 64).epsilon(1e-15));
}

TEST_CASE("ln jet at 1 gives (0, 1, -1/2)") {
  const Jet x = Jet::variable(1.0, 0, 1, 2);
  const Jet l = log(x);
  CHECK(l.value() == doctest::Approx(0.0));
  CHECK(l.coeff(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(l.coeff(2) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("sqrt and ln domain errors") {
  const Jet zero = Jet::variable(0.0, 0, 1, 2);
  CHECK_THROWS_AS(sqrt(zero), kv::domain_error);
  CHECK_THROWS_AS(log(zero), kv::domain_error);
  CHECK_THROWS_AS(pow(zero, 0.5), kv::domain_error);
}

TEST_CASE("finite-difference oracle on closed forms") {
  const auto sq = [](std::span<const double> p) { return p[0] * p[0]; };
  const double pt1[] = {3.0};
  const DerivativeTable t1 = finite_difference_oracle(sq, pt1, 1e-4);
  CHECK(t1.gradient[0] == doctest::Approx(6.0).epsilon(1e-6));

  const auto c = [](std::span<const double>) { return 5.0; };
  const DerivativeTable t2 = finite_difference_oracle(c, pt1, 1e-4);
  CHECK(std::abs(t2.gradient[0]) < 1e-9);
  CHECK(std::abs(t2.hessian[0][0]) < 1e-6);

  const auto norm = [](std::span<const double> p) { return std::sqrt(p[0] * p[0] + p[1] * p[1]); };
  const double pt2[] = {3.0, 4.0};
  const DerivativeTable t3 = finite_difference_oracle(norm, pt2, 1e-4);
  CHECK(t3.gradient[0] == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(t3.gradient[1] == doctest::Approx(0.8).epsilon(1e-6));
}

TEST_CASE("jet derivatives to degree 2 agree with finite differences") {
  std::mt19937_64 rng(2026);
  const int nvars = 3;
  for (int trial = 0; trial < 100; ++trial) {
    const double base[3] = {uniform(rng, 0.6, 1.4), uniform(rng, 0.6, 1.4), uniform(rng, 0.6, 1.4)};
    const double c0 = uniform(rng, -0.1, 0.1), c1 = uniform(rng, -0.1, 0.1), c2 = uniform(rng, -0.1, 0.1);
    const int which = trial % 5;
    const auto f = [&](std::span<const double> p) -> double {
      const double s = 2.0 + 0.3 * p[0] * p[0] + c0 * p[1] + c1 * p[0] * p[2] + c2 * p[1] * p[2];
      switch (which) {
        case 0: return s * s;
        case 1: return std::sqrt(s);
        case 2: return std::log(s);
        case 3: return (p[0] + 2 * p[1]) / s;
        default: return std::exp(0.3 * s);
      }
    };
    const auto jet_of = [&]() {
      Jet x = Jet::variable(base[0], 0, nvars, 2);
      Jet y = Jet::variable(base[1], 1, nvars, 2);
      Jet z = Jet::variable(base[2], 2, nvars, 2);
      Jet s = 2.0 + 0.3 * x * x + c0 * y + c1 * x * z + c2 * y * z;
      switch (which) {
        case 0: return s * s;
        case 1: return sqrt(s);
        case 2: return log(s);
        case 3: return (x + 2.0 * y) / s;
        default: return exp(0.3 * s);
      }
    };
    const Jet j = jet_of();
    const DerivativeTable t = finite_difference_oracle(f, base, 2e-4);
    const double scale = 1.0 + std::abs(t.value);
    CHECK(std::abs(j.value() - t.value) / scale < 1e-12);
    for (int v = 0; v < nvars; ++v)
      CHECK(std::abs(j.partial(v) - t.gradient[v]) / (1.0 + std::abs(t.gradient[v])) < 1e-6);
    for (int v = 0; v < nvars; ++v)
      for (int w = 0; w < nvars; ++w)
        CHECK(std::abs(j.second_partial(v, w) - t.hessian[v][w]) / (1.0 + std::abs(t.hessian[v][w])) <
              1e-6);
  }
}

TEST_CASE("mul is commutative and associative up to reordering") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rand_jet = [&](int nvars, int order) {
      Jet j = Jet::constant(uniform(rng, -2, 2), nvars, order);
      for (int v = 0; v < nvars; ++v)
        j += uniform(rng, -1, 1) * Jet::variable(0.0, v, nvars, order) *
             Jet::variable(uniform(rng, -1, 1), (v + 1) % nvars, nvars, order);
      return j;
    };
    const int nvars = 1 + static_cast<int>(rng() % 4);
    const int order = 1 + static_cast<int>(rng() % 3);
    const Jet a = rand_jet(nvars, order);
    const Jet b = rand_jet(nvars, order);
    const Jet c = rand_jet(nvars, order);
    const Jet ab = a * b, ba = b * a;
    for (int k = 0; k < ab.size(); ++k)
      CHECK(std::abs(ab.coeff(k) - ba.coeff(k)) <= 1e-14 * (1.0 + std::abs(ab.coeff(k))));
    const Jet abc1 = (a * b) * c, abc2 = a * (b * c);
    for (int k = 0; k < abc1.size(); ++k)
      CHECK(std::abs(abc1.coeff(k) - abc2.coeff(k)) <= 1e-13 * (1.0 + std::abs(abc1.coeff(k))));
  }
}

TEST_CASE("div undoes mul when the divisor is well conditioned") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int nvars = 1 + static_cast<int>(rng() % 4);
    const int order = 1 + static_cast<int>(rng() % 3);
    Jet a = Jet::constant(uniform(rng, -3, 3), nvars, order);
    Jet b = Jet::constant(0.0, nvars, order);
    for (int v = 0; v < nvars; ++v) {
      a += uniform(rng, -1, 1) * Jet::variable(0.0, v, nvars, order);
      b += uniform(rng, -1, 1) * Jet::variable(0.0, v, nvars, order);
    }
    b += (b.value() >= 0 ? 1.0 : -1.0) * uniform(rng, 1e-3, 2.0);
    if (std::abs(b.value()) < 1e-6) continue;
    const Jet back = (a * b) / b;
    for (int k = 0; k < back.size(); ++k)
      CHECK(std::abs(back.coeff(k) - a.coeff(k)) <= 1e-9 * (1.0 + std::abs(a.coeff(k))));
  }
}

TEST_CASE("pow_real matches exp/ln composition") {
  const Jet x = Jet::variable(2.5, 0, 2, 3);
  const Jet y = Jet::variable(0.5, 1, 2, 3);
  const Jet base = 1.0 + x * x + y;
  const Jet direct = pow(base, 0.37);
  const Jet via = exp(0.37 * log(base));
  for (int k = 0; k < direct.size(); ++k)
    CHECK(direct.coeff(k) == doctest::Approx(via.coeff(k)).epsilon(1e-12));
}

TEST_CASE("partial_jet extracts the derivative expansion") {
  const Jet x = Jet::variable(1.5, 0, 2, 3);
  const Jet y = Jet::variable(-2.0, 1, 2, 3);
  const Jet f = x * x * y + 3.0 * y;
  const Jet fx = f.partial_jet(0);  // 2xy
  CHECK(fx.order() == 2);
  CHECK(fx.value() == doctest::Approx(2 * 1.5 * -2.0));
  CHECK(fx.partial(0) == doctest::Approx(2 * -2.0));
  CHECK(fx.partial(1) == doctest::Approx(2 * 1.5));
}

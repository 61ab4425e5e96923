#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kv/dsl/eval.hpp"
#include "kv/dsl/parser.hpp"
#include "kv/error.hpp"

using namespace kv::dsl;

namespace {

const char* kFlat4 = R"(chart flat4
coords x0 x1 x2 x3
box x0 -1 1
box x1 -1 1
box x2 -1 1
box x3 -1 1
metric
  g[0,0] = 1
  g[0,1] = 0
  g[0,2] = 0
  g[0,3] = 0
  g[1,1] = 1
  g[1,2] = 0
  g[1,3] = 0
  g[2,2] = 1
  g[2,3] = 0
  g[3,3] = 1
end
)";

const char* kOrthotoricTemplate = R"(chart ortho-demo
coords xi eta t z
params a=1 b=0 c=1 d=1
domain xi - eta ; a*xi + b ; -(c*eta + d)
metric
  g[0,0] = (xi - eta) / (a*xi + b)
  g[0,1] = 0
  g[0,2] = 0
  g[0,3] = 0
  g[1,1] = -(xi - eta) / (c*eta + d)
  g[1,2] = 0
  g[1,3] = 0
  g[2,2] = ((a*xi + b) - (c*eta + d)) / (xi - eta)
  g[2,3] = ((a*xi + b)*eta - (c*eta + d)*xi) / (xi - eta)
  g[3,3] = ((a*xi + b)*eta^2 - (c*eta + d)*xi^2) / (xi - eta)
scalar phi1 = xi + eta
end
)";

}  // namespace

TEST_CASE("flat 4-coordinate chart parses to an identity metric") {
  const ChartSpec c = parse_chart(kFlat4);
  CHECK(c.dim() == 4);
  CHECK(c.name == "flat4");
  const double pt[] = {0.1, 0.2, 0.3, 0.4};
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      CHECK(eval_plain(c.metric_at(i, j), c, pt) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("orthotoric template: the (xi,xi) entry is (xi-eta)/F") {
  const ChartSpec c = parse_chart(kOrthotoricTemplate);
  const double pt[] = {1.0, -2.0, 0.0, 0.0};
  CHECK(eval_plain(c.metric_at(0, 0), c, pt) == doctest::Approx(3.0 / 1.0));
  // g_tt example: (F - G)/(xi - eta) = 2/3
  CHECK(eval_plain(c.metric_at(2, 2), c, pt) == doctest::Approx(2.0 / 3.0));
  // g(X1, X2) = (eta F - xi G)/(xi - eta) = -1/3
  CHECK(eval_plain(c.metric_at(2, 3), c, pt) == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("unknown identifiers and malformed charts are rejected with locations") {
  try {
    parse_chart("chart bad\ncoords x y\nmetric\n  g[0,0] = w\n  g[0,1] = 0\n  g[1,1] = 1\nend\n");
    FAIL("expected parse_error");
  } catch (const kv::parse_error& e) {
    CHECK(e.line == 4);
    CHECK(std::string(e.what()).find("unknown identifier") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_chart("chart bad\ncoords x y\nmetric\n  g[0,2] = 1\nend\n"), kv::parse_error);
  CHECK_THROWS_AS(parse_chart("chart bad\ncoords x x\nmetric\n  g[0,0] = 1\nend\n"), kv::parse_error);
  CHECK_THROWS_AS(parse_chart("chart bad\ncoords x y\nmetric\n  g[0,0] = 1\n  g[0,1] = 0\nend\n"),
                  kv::parse_error);  // missing g[1,1]
  CHECK_THROWS_AS(parse_chart("chart bad\ncoords x y z\nmetric\nend\n"), kv::parse_error);
  CHECK_THROWS_AS(parse_chart("chart bad\ncoords x y\nmetric\n  g[1,0] = 1\nend\n"), kv::parse_error);
  CHECK_THROWS_AS(parse_chart("chart bad\ncoords x y\nscalar s = x^1.5\nmetric\n  g[0,0] = 1\n  g[0,1] = 0\n  g[1,1] = 1\nend\n"),
                  kv::parse_error);
}

TEST_CASE("parse-print-parse is idempotent") {
  for (const char* text : {kFlat4, kOrthotoricTemplate}) {
    const ChartSpec c1 = parse_chart(text);
    const std::string p1 = print_chart(c1);
    const ChartSpec c2 = parse_chart(p1);
    const std::string p2 = print_chart(c2);
    CHECK(p1 == p2);
    CHECK(chart_hash(c1) == chart_hash(c2));
  }
}

TEST_CASE("eval_expr seeds coordinates and respects the domain") {
  const ChartSpec c = parse_chart(kOrthotoricTemplate);
  const double pt[] = {1.0, -2.0, 0.0, 0.0};
  const kv::jets::Jet j = eval_expr(*c.find_scalar("phi1"), c, pt, 1);
  CHECK(j.value() == doctest::Approx(-1.0));
  CHECK(j.partial(0) == doctest::Approx(1.0));
  CHECK(j.partial(1) == doctest::Approx(1.0));
  CHECK(j.partial(2) == 0.0);

  const double bad[] = {1.0, 1.0, 0.0, 0.0};  // xi == eta
  CHECK_THROWS_AS(eval_expr(*c.find_scalar("phi1"), c, bad, 1), kv::domain_error);
}

TEST_CASE("sqrt(-F*G) evaluates the volumetric area factor") {
  const ChartSpec c = parse_chart(kOrthotoricTemplate);
  // build sqrt(-(a*xi+b)*(c*eta+d)) against the template's params
  const ChartSpec helper = parse_chart(
      "chart h\ncoords xi eta\nparams a=1 b=0 c=1 d=1\nmetric\n  g[0,0] = 1\n  g[0,1] = 0\n  g[1,1] = 1\n"
      "scalar v = sqrt(-((a*xi + b)*(c*eta + d)))\nend\n");
  const double pt[] = {1.0, -2.0};
  CHECK(eval_plain(*helper.find_scalar("v"), helper, pt) == doctest::Approx(1.0));
}

TEST_CASE("order-0 evaluation matches plain recursion on random expressions") {
  const ChartSpec c = parse_chart(kOrthotoricTemplate);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const double pt[] = {0.5 + 3.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53),
                         -1.1 - 3.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53), 0.3, 0.9};
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        const double plain = eval_plain(c.metric_at(i, j), c, pt);
        const kv::jets::Jet jet = eval(c.metric_at(i, j), make_context(c, pt, 1));
        CHECK(std::abs(plain - jet.value()) <= 1e-15 * (1.0 + std::abs(plain)));
      }
  }
}

TEST_CASE("canonical printer keeps negative exponents and calls") {
  const ChartSpec c = parse_chart(
      "chart p\ncoords x y\nmetric\n  g[0,0] = x^-2 + ln(1 + y^2)\n  g[0,1] = -(x + y)*exp(x)\n  g[1,1] = 1\nend\n");
  const std::string out = print_chart(c);
  const ChartSpec c2 = parse_chart(out);
  CHECK(print_chart(c2) == out);
  const double pt[] = {1.3, 0.4};
  CHECK(eval_plain(c.metric_at(0, 0), c, pt) == doctest::Approx(eval_plain(c2.metric_at(0, 0), c2, pt)));
  CHECK(eval_plain(c.metric_at(0, 1), c, pt) == doctest::Approx(eval_plain(c2.metric_at(0, 1), c2, pt)));
}

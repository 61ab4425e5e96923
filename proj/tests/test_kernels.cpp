#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "kv/jets/kernels.hpp"

using namespace kv::jets;

namespace {

std::vector<double> random_coeffs(std::mt19937_64& rng, int n) {
  std::vector<double> v(n);
  for (auto& x : v) x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("avx2 kernels are bit-identical to the scalar reference") {
  if (!kernels::avx2_available()) {
    MESSAGE("AVX2 not available on this host; scalar-only");
    return;
  }
  const kernels::Backend& s = kernels::scalar_backend();
  const kernels::Backend& v = kernels::avx2_backend();
  std::mt19937_64 rng(99);
  for (int nvars = 1; nvars <= 4; ++nvars) {
    for (int order = 1; order <= 3; ++order) {
      const Layout& L = Layout::get(nvars, order);
      for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_coeffs(rng, L.count);
        const auto b = random_coeffs(rng, L.count);
        std::vector<double> r1(L.count), r2(L.count);

        s.add(r1.data(), a.data(), b.data(), L.count);
        v.add(r2.data(), a.data(), b.data(), L.count);
        CHECK(bit_equal(r1, r2));

        s.sub(r1.data(), a.data(), b.data(), L.count);
        v.sub(r2.data(), a.data(), b.data(), L.count);
        CHECK(bit_equal(r1, r2));

        s.scale(r1.data(), a.data(), 1.37, L.count);
        v.scale(r2.data(), a.data(), 1.37, L.count);
        CHECK(bit_equal(r1, r2));

        r1 = b;
        r2 = b;
        s.axpy(r1.data(), a.data(), -0.73, L.count);
        v.axpy(r2.data(), a.data(), -0.73, L.count);
        CHECK(bit_equal(r1, r2));

        s.mul(r1.data(), a.data(), b.data(), L);
        v.mul(r2.data(), a.data(), b.data(), L);
        CHECK(bit_equal(r1, r2));
      }
    }
  }
}

TEST_CASE("backend selection honors overrides") {
  CHECK(kernels::set_active("scalar"));
  CHECK(std::string(kernels::active().name) == "scalar");
  if (kernels::avx2_available()) {
    CHECK(kernels::set_active("avx2"));
    CHECK(std::string(kernels::active().name) == "avx2");
  } else {
    CHECK_FALSE(kernels::set_active("avx2"));
  }
  CHECK_FALSE(kernels::set_active("neon"));
  kernels::set_active(kernels::avx2_available() ? "avx2" : "scalar");
}

TEST_CASE("truncated product tables match a dense reference") {
  std::mt19937_64 rng(5);
  for (int nvars = 1; nvars <= 4; ++nvars) {
    for (int order = 1; order <= 3; ++order) {
      const Layout& L = Layout::get(nvars, order);
      const auto a = random_coeffs(rng, L.count);
      const auto b = random_coeffs(rng, L.count);
      std::vector<double> got(L.count);
      kernels::scalar_backend().mul(got.data(), a.data(), b.data(), L);
      // dense reference: convolve exponent vectors directly
      std::vector<double> want(L.count, 0.0);
      for (int i = 0; i < L.count; ++i)
        for (int j = 0; j < L.count; ++j) {
          std::array<std::uint8_t, kMaxVars> sum{};
          int deg = 0;
          for (int v = 0; v < nvars; ++v) {
            sum[v] = static_cast<std::uint8_t>(L.exponent[i][v] + L.exponent[j][v]);
            deg += sum[v];
          }
          if (deg > order) continue;
          want[L.index_of(sum)] += a[i] * b[j];
        }
      for (int k = 0; k < L.count; ++k)
        CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-13));
    }
  }
}

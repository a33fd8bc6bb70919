#include <doctest.h>

#include <bit>
#include <cstring>
#include <random>
#include <vector>

#include "pti/kernels.hpp"
#include "pti/linalg.hpp"
#include "pti/states.hpp"

using namespace pti;
using kernels::KernelTable;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> normals(std::size_t n, std::mt19937_64& g) {
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (double& x : v) x = d(g);
  return v;
}

const KernelTable* avx2_or_skip() {
  const KernelTable* k = kernels::avx2_kernels();
  if (!k) MESSAGE("AVX2 variant unavailable on this host; equivalence checks skipped");
  return k;
}

}  // namespace

TEST_CASE("scalar table is named and complete") {
  const KernelTable& s = kernels::scalar_kernels();
  CHECK(s.name == "scalar");
  CHECK(s.rotate_pair != nullptr);
  CHECK(s.accumulate_outer != nullptr);
  CHECK(s.max_abs != nullptr);
}

TEST_CASE("rotate_pair: avx2 matches scalar bitwise for every tail length") {
  const KernelTable* v = avx2_or_skip();
  if (!v) return;
  const KernelTable& s = kernels::scalar_kernels();
  std::mt19937_64 g(11);
  for (std::size_t n = 0; n <= 37; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      auto xr = normals(n, g), xi = normals(n, g), yr = normals(n, g), yi = normals(n, g);
      auto c = normals(8, g);
      const kernels::cplx al{c[0], c[1]}, be{c[2], c[3]}, ga{c[4], c[5]}, de{c[6], c[7]};
      auto xr2 = xr, xi2 = xi, yr2 = yr, yi2 = yi;
      s.rotate_pair(xr.data(), xi.data(), yr.data(), yi.data(), n, al, be, ga, de);
      v->rotate_pair(xr2.data(), xi2.data(), yr2.data(), yi2.data(), n, al, be, ga, de);
      REQUIRE(same_bits(xr, xr2));
      REQUIRE(same_bits(xi, xi2));
      REQUIRE(same_bits(yr, yr2));
      REQUIRE(same_bits(yi, yi2));
    }
  }
}

TEST_CASE("accumulate_outer: avx2 matches scalar bitwise") {
  const KernelTable* v = avx2_or_skip();
  if (!v) return;
  const KernelTable& s = kernels::scalar_kernels();
  std::mt19937_64 g(12);
  for (std::size_t n = 0; n <= 37; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      auto yr = normals(n, g), yi = normals(n, g), ar = normals(n, g), ai = normals(n, g);
      auto x = normals(2, g);
      auto ar2 = ar, ai2 = ai;
      s.accumulate_outer(x[0], x[1], yr.data(), yi.data(), ar.data(), ai.data(), n);
      v->accumulate_outer(x[0], x[1], yr.data(), yi.data(), ar2.data(), ai2.data(), n);
      REQUIRE(same_bits(ar, ar2));
      REQUIRE(same_bits(ai, ai2));
    }
  }
}

TEST_CASE("max_abs: avx2 matches scalar, including signed zeros and ties") {
  const KernelTable* v = avx2_or_skip();
  if (!v) return;
  const KernelTable& s = kernels::scalar_kernels();
  std::mt19937_64 g(13);
  for (std::size_t n = 0; n <= 41; ++n) {
    auto x = normals(n, g);
    CHECK(std::bit_cast<std::uint64_t>(s.max_abs(x.data(), n)) == std::bit_cast<std::uint64_t>(v->max_abs(x.data(), n)));
  }
  std::vector<double> z{-0.0, 0.0, -0.0, -3.0, 3.0, 0.0, -0.0};
  CHECK(s.max_abs(z.data(), z.size()) == 3.0);
  CHECK(v->max_abs(z.data(), z.size()) == 3.0);
  CHECK(s.max_abs(nullptr, 0) == 0.0);
}

TEST_CASE("eigensolver and sampler are bitwise identical under both tables") {
  const KernelTable* v = avx2_or_skip();
  if (!v) return;
  const KernelTable& s = kernels::scalar_kernels();
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const BipartiteState rho = random_state({3, 3}, 1 + seed % 9, seed % 2 ? Ensemble::real : Ensemble::complex, seed);
    const ComplexMatrix pt = partial_transpose(rho);
    const auto es = herm_eig(pt, s);
    const auto ev = herm_eig(pt, *v);
    REQUIRE(same_bits(es.values, ev.values));
    REQUIRE(es.vectors == ev.vectors);
    REQUIRE(same_bits(herm_eigvals(pt, s), herm_eigvals(pt, *v)));
  }
}

TEST_CASE("active table honours the environment override") {
  const KernelTable& a = kernels::active_kernels();
  if (const char* env = std::getenv("PTI_SIMD"); env && std::string(env) == "scalar") {
    CHECK(a.name == "scalar");
  } else if (kernels::avx2_kernels()) {
    CHECK(a.name == kernels::avx2_kernels()->name);
  }
}

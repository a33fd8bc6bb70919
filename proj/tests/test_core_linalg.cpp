#include <doctest.h>

#include <cmath>
#include <random>

#include "pti/catalog.hpp"
#include "pti/exact_inertia.hpp"
#include "pti/gaussian_rational.hpp"
#include "pti/inertia.hpp"
#include "pti/linalg.hpp"
#include "pti/seeding.hpp"
#include "pti/states.hpp"

using namespace pti;

namespace {

// Hermitian with a prescribed inertia: U diag(d) U^dagger, U the eigenbasis of a random state.
ComplexMatrix random_hermitian(std::size_t dim, const Inertia& in, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> mag(0.5, 3.0);
  std::vector<double> d;
  for (int k = 0; k < in.minus; ++k) d.push_back(-mag(g));
  for (int k = 0; k < in.zero; ++k) d.push_back(0.0);
  for (int k = 0; k < in.plus; ++k) d.push_back(mag(g));
  const ComplexMatrix basis = herm_eig(random_state({1, dim}, dim, Ensemble::complex, seed).matrix()).vectors;
  return basis * ComplexMatrix::diagonal(d) * basis.adjoint();
}

Inertia random_inertia(std::size_t dim, std::mt19937_64& g) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(dim));
  const int a = pick(g);
  std::uniform_int_distribution<int> pick2(0, static_cast<int>(dim) - a);
  const int b = pick2(g);
  return {a, b, static_cast<int>(dim) - a - b};
}

}  // namespace

TEST_CASE("herm_eig on small known matrices") {
  const auto e = herm_eig(ComplexMatrix{{2.0, cplx(0, 1)}, {cplx(0, -1), 2.0}});
  REQUIRE(e.values.size() == 2);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-14));
  const ComplexMatrix rec = e.vectors * ComplexMatrix::diagonal(e.values) * e.vectors.adjoint();
  CHECK(max_abs_diff(rec, ComplexMatrix{{2.0, cplx(0, 1)}, {cplx(0, -1), 2.0}}) < 1e-14);
  CHECK(herm_eigvals(ComplexMatrix::identity(5)) == std::vector<double>(5, 1.0));
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  CHECK_THROWS_AS(herm_eig(ComplexMatrix{{1.0, 2.0}, {0.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("eigen decomposition reconstructs random Hermitian matrices") {
  for (std::uint64_t s = 1; s <= 40; ++s) {
    const std::size_t dim = 2 + s % 11;
    const ComplexMatrix m = random_state({1, dim}, dim, Ensemble::complex, s).matrix() -
                            (0.05 * s) * ComplexMatrix::identity(dim);
    const auto e = herm_eig(m);
    const ComplexMatrix rec = e.vectors * ComplexMatrix::diagonal(e.values) * e.vectors.adjoint();
    CHECK(max_abs_diff(rec, m) < 1e-12 * std::max(1.0, m.max_abs()));
    CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, ComplexMatrix::identity(dim)) < 1e-12);
  }
}

TEST_CASE("eigenvalue sum equals trace") {
  for (std::uint64_t s = 1; s <= 60; ++s) {
    const BipartiteState rho = random_state({3, 3}, 1 + s % 9, s % 2 ? Ensemble::real : Ensemble::complex, s);
    const ComplexMatrix pt = partial_transpose(rho);
    double sum = 0.0;
    for (double v : herm_eigvals(pt)) sum += v;
    const double tr = pt.trace().real();
    CHECK(std::abs(sum - tr) <= 1e-10 * std::max(1.0, std::abs(tr)));
  }
}

TEST_CASE("classify_eigenvalues threshold and marginal flag") {
  const std::vector<double> clean{-2.0, 0.0, 1e-12, 3.0};
  const auto a = classify_eigenvalues(clean);
  CHECK(a.inertia == Inertia{1, 2, 1});
  CHECK_FALSE(a.marginal);
  CHECK(a.threshold == doctest::Approx(3e-9));
  const std::vector<double> close{-1.0, 5e-9, 1.0};
  const auto b = classify_eigenvalues(close);
  CHECK(b.inertia == Inertia{1, 0, 2});
  CHECK(b.marginal);
  CHECK(classify_eigenvalues(close, 1e-8).inertia == Inertia{1, 1, 1});
}

TEST_CASE("Inertia text forms") {
  const Inertia in{1, 5, 3};
  CHECK(in.to_string() == "(1,5,3)");
  CHECK(in.to_plain() == "1 5 3");
  CHECK(Inertia::parse("(1,5,3)") == in);
  CHECK(Inertia::parse("1,5,3") == in);
  CHECK(Inertia::parse("1 5 3") == in);
  CHECK_THROWS(Inertia::parse("(1,5)"));
  CHECK(Inertia{1, 0, 8} < Inertia{2, 0, 7});
}

TEST_CASE("exact_inertia small cases") {
  RationalComplexMatrix id(3);
  for (int k = 0; k < 3; ++k) id(k, k) = 1;
  CHECK(exact_inertia(id) == Inertia{0, 0, 3});

  RationalComplexMatrix anti(2);
  anti(0, 1) = 1;
  anti(1, 0) = 1;
  CHECK(exact_inertia(anti) == Inertia{1, 0, 1});

  RationalComplexMatrix cplx_anti(3);
  cplx_anti(0, 2) = GaussianRational(mpq_class(1, 3), mpq_class(2));
  cplx_anti(2, 0) = cplx_anti(0, 2).conj();
  CHECK(exact_inertia(cplx_anti) == Inertia{1, 1, 1});

  CHECK(exact_inertia(RationalComplexMatrix(4)) == Inertia{0, 4, 0});

  RationalComplexMatrix bad(2);
  bad(0, 1) = 1;
  CHECK_THROWS_AS(exact_inertia(bad), std::invalid_argument);
}

TEST_CASE("exact_inertia: PT of the (1,5,3) array") {
  const CatalogEntry& e = catalog_entry("arr13_vi");
  const Recipe r = e.build(resolve_params(e, {}));
  CHECK(exact_inertia(partial_transpose(r.exact(), r.dims)) == Inertia{1, 5, 3});
}

TEST_CASE("exact_inertia needs pivoting after cancellation") {
  // [[1,1,0],[1,1,1],[0,1,0]]: after the first pivot the trailing diagonal vanishes.
  RationalComplexMatrix m(3);
  m(0, 0) = 1; m(0, 1) = 1;
  m(1, 0) = 1; m(1, 1) = 1; m(1, 2) = 1;
  m(2, 1) = 1;
  CHECK(exact_inertia(m) == Inertia{1, 0, 2});
  CHECK(inertia_of(m.to_double()).inertia == Inertia{1, 0, 2});
}

TEST_CASE("Sylvester invariance over random congruences") {
  for (std::size_t dim : {4u, 6u, 9u}) {
    CAPTURE(dim);
    std::mt19937_64 g(100 + dim);
    int exact_checked = 0;
    for (std::uint64_t t = 0; t < 120; ++t) {
      const Inertia target = random_inertia(dim, g);
      const std::uint64_t seed = mix_seed(dim, t);
      const ComplexMatrix m = random_hermitian(dim, target, seed);
      const ComplexMatrix s = random_invertible(dim, t % 2 ? Ensemble::real : Ensemble::complex, seed + 1);
      const auto before = inertia_of(m);
      const auto after = inertia_of(congruence(m, s));
      REQUIRE_FALSE(before.marginal);
      REQUIRE_FALSE(after.marginal);
      CHECK(before.inertia == target);
      CHECK(after.inertia == before.inertia);
      if (t % 4 == 0) {
        // Round M and S to rationals; the exact congruence keeps the exact inertia.
        RationalComplexMatrix me = RationalComplexMatrix::from_double(m);
        for (std::size_t i = 0; i < dim; ++i)
          for (std::size_t j = i; j < dim; ++j) {
            if (i == j) me(i, i).im = 0;
            else me(j, i) = me(i, j).conj();
          }
        const RationalComplexMatrix se = RationalComplexMatrix::from_double(s);
        RationalComplexMatrix c(dim);
        for (std::size_t i = 0; i < dim; ++i)
          for (std::size_t l = 0; l < dim; ++l) {
            GaussianRational acc;
            for (std::size_t j = 0; j < dim; ++j)
              for (std::size_t k = 0; k < dim; ++k) acc += se(i, j) * me(j, k) * se(l, k).conj();
            c(i, l) = acc;
          }
        CHECK(exact_inertia(c) == exact_inertia(me));
        ++exact_checked;
      }
    }
    CHECK(exact_checked == 30);
  }
}

TEST_CASE("determinant, singularity and numerical rank") {
  CHECK(determinant(ComplexMatrix{{1.0, 2.0}, {3.0, 4.0}}).real() == doctest::Approx(-2.0));
  CHECK(is_numerically_singular(ComplexMatrix{{1.0, 2.0}, {2.0, 4.0}}));
  CHECK_FALSE(is_numerically_singular(ComplexMatrix::identity(3)));
  ComplexMatrix r(3, 2);
  r(0, 0) = 1.0; r(1, 0) = 2.0; r(0, 1) = 2.0; r(1, 1) = 4.0;
  CHECK(numerical_rank(r) == 1);
  CHECK(numerical_rank(ComplexMatrix::identity(4)) == 4);
  CHECK_THROWS_AS(congruence(ComplexMatrix::identity(2), ComplexMatrix{{1.0, 1.0}, {1.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("Gaussian rationals") {
  CHECK(GaussianRational::parse("1/2-3/4j") == GaussianRational(mpq_class(1, 2), mpq_class(-3, 4)));
  CHECK(GaussianRational::parse("-j") == GaussianRational(0, -1));
  CHECK(GaussianRational::parse("1e-3").re == mpq_class(1, 1000));
  CHECK(GaussianRational::parse("0.25").to_string() == "1/4+0j");
  CHECK_THROWS_AS(GaussianRational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(GaussianRational::parse("abc"), std::invalid_argument);
  const GaussianRational z(mpq_class(1, 3), mpq_class(2));
  CHECK((z / z) == GaussianRational(1));
  CHECK(z.norm() == mpq_class(37, 9));
  CHECK(nearest_double(mpq_class(1, 3)) == 1.0 / 3.0);
  CHECK(nearest_double(mpq_class(2, 3)) == 2.0 / 3.0);
  const double x = 0.1;
  CHECK(GaussianRational::from_double(x).to_complex().real() == x);
}

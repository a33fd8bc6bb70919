#include <doctest.h>

#include <cmath>

#include "pti/analysis.hpp"
#include "pti/catalog.hpp"
#include "pti/linalg.hpp"
#include "pti/states.hpp"
#include "support.hpp"

using namespace pti;

TEST_CASE("inertia of simple partial transposes") {
  CHECK(inertia_of(ComplexMatrix::identity(9)).inertia == Inertia{0, 0, 9});
  CHECK(pt_inertia(build("arr13_vi")).inertia == Inertia{1, 5, 3});
  CHECK(pt_inertia(build("npt2_i")).inertia == Inertia{1, 4, 4});
  CHECK_THROWS_AS(inertia_of(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("pure_inertia formula") {
  CHECK(pure_inertia(3, 3, 3) == Inertia{3, 0, 6});
  CHECK(pure_inertia(1, 2, 5) == Inertia{0, 9, 1});
  CHECK(pure_inertia(2, 3, 3) == Inertia{1, 5, 3});
  CHECK(pure_inertia(2, 3, 3) == pt_inertia(build("arr13_vi")).inertia);
  CHECK_THROWS_AS(pure_inertia(0, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(pure_inertia(3, 2, 3), std::invalid_argument);
}

TEST_CASE("pure states follow the formula under SLOCC") {
  for (BipartiteDims d : {BipartiteDims{2, 2}, BipartiteDims{2, 3}, BipartiteDims{3, 2}, BipartiteDims{3, 4}}) {
    for (std::size_t r = 1; r <= std::min(d.m, d.n); ++r) {
      for (std::uint64_t s = 0; s < 20; ++s) {
        const std::vector<PureState> k{testing::slocc_pure(d, r, 977 * r + s)};
        const std::vector<double> w{1.0};
        const auto res = pt_inertia(dm_from_kets(k, w));
        CHECK_FALSE(res.marginal);
        CHECK(res.inertia == pure_inertia(static_cast<int>(r), static_cast<int>(d.m), static_cast<int>(d.n)));
      }
    }
  }
}

TEST_CASE("negativity") {
  const std::vector<double> w{1.0};
  const std::vector<PureState> prod{PureState({2, 2}, {0.6, 0.8, 0.0, 0.0})};
  CHECK(negativity(dm_from_kets(prod, w)) == doctest::Approx(0.0));
  const std::vector<PureState> bell{parse_ket("|0,0> + |1,1>", {2, 2})};
  CHECK(negativity(dm_from_kets(bell, w)) == doctest::Approx(0.5).epsilon(1e-14));
  // Scale does not matter.
  CHECK(negativity(BipartiteState::make({2, 2}, 7.0 * dm_from_kets(bell, w).matrix())) == doctest::Approx(0.5));

  const BipartiteState ex11 = build("ex11");
  const Ex11Spectrum cf = ex11_closed_form(1.0, 1.0);
  double neg = 0.0;
  for (double v : cf.eigenvalues)
    if (v < 0) neg -= v;
  CHECK(negativity(ex11) == doctest::Approx(neg / ex11.matrix().trace().real()).epsilon(1e-12));
}

TEST_CASE("PPT classification") {
  const BipartiteDims d{3, 3};
  const std::vector<PureState> k{PureState::basis(d, 0, 0), PureState::basis(d, 1, 2), parse_ket("|0,0> + |0,1> + |1,0> + |1,1>", d)};
  const std::vector<double> w{1.0, 0.5, 0.25};
  const PptClass sep = classify_ppt(dm_from_kets(k, w));
  CHECK_FALSE(sep.npt);
  CHECK(sep.inertia.minus == 0);
  for (std::size_t r = 2; r <= 3; ++r) {
    const std::vector<PureState> p{testing::slocc_pure(d, r, r)};
    const std::vector<double> one{1.0};
    CHECK(classify_ppt(dm_from_kets(p, one)).npt);
  }
  for (const CatalogEntry& e : catalog())
    if (e.primary_33) CHECK_MESSAGE(classify_ppt(build(e.id)).npt, e.id);
}

TEST_CASE("shift_identity keeps negatives and lifts zeros") {
  const ShiftResult s = shift_identity(build("arr13_vi"));
  CHECK(pt_inertia(s.sigma).inertia == Inertia{1, 0, 8});
  CHECK(s.x > 0.0);
  CHECK(s.x < 1.0);

  const BipartiteState full = build("arr13_xiii");
  CHECK(pt_inertia(shift_identity(full).sigma).inertia == pt_inertia(full).inertia);

  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const BipartiteState rho = random_state({3, 3}, 3, Ensemble::real, seed);
    const auto before = pt_inertia(rho);
    if (before.inertia.minus == 0) continue;
    const ShiftResult sh = shift_identity(rho);
    const auto after = pt_inertia(sh.sigma);
    CHECK(after.inertia.zero == 0);
    CHECK(after.inertia.minus == before.inertia.minus);
    const double smallest = -before.eigenvalues[before.inertia.minus - 1];
    CHECK(sh.x == doctest::Approx(smallest / 2));
  }

  const std::vector<PureState> k{PureState::basis({3, 3}, 0, 0)};
  const std::vector<double> w{1.0};
  CHECK_THROWS_AS(shift_identity(dm_from_kets(k, w)), std::invalid_argument);
}

TEST_CASE("embed follows the transform formula") {
  const BipartiteState s204 = build("arr3_xii");
  REQUIRE(pt_inertia(s204).inertia == Inertia{2, 0, 4});
  const Inertia want[] = {{2, 3, 4}, {2, 2, 5}, {2, 1, 6}, {2, 0, 7}};
  for (std::size_t l = 0; l <= 3; ++l) {
    const EmbedResult r = embed(s204, 3, 3, l);
    CHECK(r.expected == want[l]);
    CHECK(pt_inertia(r.state).inertia == want[l]);
    CHECK_FALSE(r.lifted_seed_zeros);
  }

  // Seed with zeros: they are lifted first, so the zero count comes only from the new rows.
  const BipartiteState s123 = build("seed23_phi2");
  for (std::size_t l = 0; l <= 3; ++l) {
    const EmbedResult r = embed(s123, 3, 3, l);
    CHECK(r.lifted_seed_zeros);
    CHECK(r.expected == Inertia{1, static_cast<int>(3 - l), static_cast<int>(5 + l)});
    CHECK(pt_inertia(r.state).inertia == r.expected);
  }
  CHECK(pt_inertia(embed(s204, 3, 5, 9).state).inertia.zero == 0);
  CHECK(pt_inertia(embed(s204, 4, 4, 2).state).inertia == Inertia{2, 8, 6});
  CHECK_THROWS_AS(embed(s204, 3, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(embed(s204, 1, 3, 0), std::invalid_argument);
}

TEST_CASE("embed_plain keeps the seed's zeros") {
  const BipartiteState s123 = build("seed23_phi2");
  const std::size_t cap = embed_plain_capacity(s123, 3, 3);
  CHECK(cap == 5);
  const Inertia want[] = {{1, 5, 3}, {1, 4, 4}, {1, 3, 5}, {1, 2, 6}};
  for (std::size_t l = 0; l <= 3; ++l) {
    const EmbedResult r = embed_plain(s123, 3, 3, l);
    CHECK(r.expected == want[l]);
    CHECK(pt_inertia(r.state).inertia == want[l]);
  }
  CHECK_THROWS_AS(embed_plain(s123, 3, 3, cap + 1), std::invalid_argument);
}

TEST_CASE("scaling invariance of the PT inertia") {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const BipartiteState rho = random_state({3, 3}, 1 + s % 5, Ensemble::complex, s);
    const auto base = pt_inertia(rho);
    for (double c : {1e-6, 0.37, 5.0, 1e6}) {
      const auto scaled = pt_inertia(BipartiteState::make({3, 3}, c * rho.matrix()));
      if (!base.marginal && !scaled.marginal) CHECK(scaled.inertia == base.inertia);
    }
  }
}

TEST_CASE("rank-one update trichotomy") {
  // Positive definite PT: nothing changes.
  const BipartiteState pd = BipartiteState::make({2, 2}, ComplexMatrix::identity(4));
  const std::vector<cplx> a{1.0, 0.5}, b{0.0, 1.0};
  const UpdateCheck u = rank_one_update_check(pd, a, b);
  REQUIRE(u.which);
  CHECK(*u.which == UpdateCase::case1);
  CHECK(u.after == Inertia{0, 0, 4});

  // Eigenvector-supported product vector in range(P): |2,2> for (|00>+|11>)P + |22><22|.
  const BipartiteState npt = build("npt2_i");
  const std::vector<cplx> e2{0.0, 0.0, 1.0};
  const UpdateCheck u1 = rank_one_update_check(npt, e2, e2);
  REQUIRE(u1.which);
  CHECK(*u1.which == UpdateCase::case1);

  // |0,1>-|1,0> spans range(Q) but is not a product vector; |0,1> has a Q component.
  const std::vector<cplx> e0{1.0, 0.0, 0.0}, e1{0.0, 1.0, 0.0};
  const UpdateCheck u2 = rank_one_update_check(npt, e0, e1);
  REQUIRE(u2.which);
  CHECK(u2.after.minus <= u2.before.minus);

  // |0,2> lies in the kernel of the PT.
  CHECK_THROWS_AS(rank_one_update_check(npt, e0, e2), std::invalid_argument);

  std::mt19937_64 g(5);
  int tested = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const BipartiteState rho = s % 2 ? random_state({3, 3}, 1 + s % 9, Ensemble::complex, s)
                                     : apply_slocc(build("arr13_ix"), random_invertible(3, Ensemble::complex, s),
                                                   random_invertible(3, Ensemble::complex, s + 7));
    const auto ab = testing::product_in_range(rho, g);
    if (!ab) continue;
    const UpdateCheck c = rank_one_update_check(rho, ab->first, ab->second);
    if (c.marginal) continue;
    CHECK(c.which.has_value());
    ++tested;
  }
  CHECK(tested > 150);
}

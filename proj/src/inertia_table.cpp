#include "pti/inertia_table.hpp"

#include <algorithm>
#include <stdexcept>

#include "pti/analysis.hpp"
#include "pti/catalog.hpp"
#include "pti/exact_inertia.hpp"

namespace pti {

bool InertiaSetReport::all_verified() const {
  return std::all_of(realized.begin(), realized.end(), [](const RealizedInertia& r) { return r.verified; });
}

namespace {

void add_realized(InertiaSetReport& rep, RealizedInertia r) {
  for (RealizedInertia& have : rep.realized)
    if (have.inertia == r.inertia) {
      if (!have.verified && r.verified) have = std::move(r);
      return;
    }
  rep.realized.push_back(std::move(r));
}

// Seeds (k,0,k+2) on 2 x (k+1) placed in 2 x n with l lifted basis states.
void two_row_family(InertiaSetReport& rep, std::size_t n, double tol_zero) {
  for (std::size_t k = 1; k + 1 <= n; ++k) {
    const BipartiteState seed = lemma3n_seed(k).state();
    const std::size_t span = 2 * n - 2 * k - 2;
    for (std::size_t l = 0; l <= span; ++l) {
      const EmbedResult e = embed_plain(seed, 2, n, l, tol_zero);
      const InertiaResult f = pt_inertia(e.state, tol_zero);
      const Inertia exact =
          exact_inertia(partial_transpose(RationalComplexMatrix::from_double(e.state.matrix()), e.state.dims()));
      add_realized(rep, {f.inertia,
                         "2x" + std::to_string(k + 1) + " seed (" + std::to_string(k) + ",0," + std::to_string(k + 2) +
                             ") placed in 2x" + std::to_string(n) + ", l=" + std::to_string(l),
                         !f.marginal && f.inertia == e.expected && exact == f.inertia});
    }
  }
}

}  // namespace

InertiaSetReport inertia_table(BipartiteDims dims, double tol_zero) {
  const bool two = dims.m == 2 && dims.n >= 2;
  const bool three = dims.m == 3 && dims.n >= 3;
  if (!two && !three)
    throw std::invalid_argument("inertia_table supports 2xn (n>=2) and 3xn (n>=3), got " + dims.to_string());

  InertiaSetReport rep;
  rep.dims = dims;
  if (two) {
    two_row_family(rep, dims.n, tol_zero);
  } else if (dims.n == 3) {
    for (const CatalogEntry& e : catalog()) {
      if (!e.primary_33) continue;
      const VerifyResult v = verify(e.id, {}, tol_zero);
      add_realized(rep, {v.computed, e.id, v.pass});
    }
    const char* no_product_kernel =
        "kernel of rho^Gamma would contain product vectors that force one of the realized arrays";
    rep.forbidden = {{{2, 4, 3}, no_product_kernel}, {{3, 3, 3}, no_product_kernel}, {{4, 2, 3}, no_product_kernel}};
    rep.open = {{{3, 2, 4}, "neither constructed nor excluded"}, {{4, 1, 4}, "neither constructed nor excluded"}};
    rep.notes.push_back("upper bound 15 = 13 realized + 2 open");
    rep.notes.push_back("one branch of the two-product-vector kernel argument lists 12 arrays; the table lists all 13");
  } else {
    for (const FamilyMember& m : lemma3n_family(dims.n, tol_zero)) add_realized(rep, {m.computed, m.construction, m.verified});
  }
  std::sort(rep.realized.begin(), rep.realized.end(),
            [](const RealizedInertia& a, const RealizedInertia& b) { return a.inertia < b.inertia; });
  return rep;
}

}  // namespace pti

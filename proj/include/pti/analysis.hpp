#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pti/inertia.hpp"
#include "pti/states.hpp"

namespace pti {

/// Sum of |lambda| over the negative eigenvalues of rho^Gamma, rho scaled to trace 1.
double negativity(const BipartiteState& rho, double tol_zero = kDefaultTolZero);

struct PptClass {
  bool npt = false;
  bool marginal = false;
  Inertia inertia;
};
PptClass classify_ppt(const BipartiteState& rho, double tol_zero = kDefaultTolZero);

/// PT inertia of a pure state with Schmidt rank r on an m x n system:
/// ((r^2-r)/2, mn-r^2, (r^2+r)/2).
Inertia pure_inertia(int r, int m, int n);

struct ShiftResult {
  BipartiteState sigma;
  double x = 0.0;
};

/// sigma = rho + x I with x half the smallest |negative eigenvalue| of rho^Gamma.
/// Zero eigenvalues of rho^Gamma become positive; the negative count is kept.
/// Rejects PPT input.
ShiftResult shift_identity(const BipartiteState& rho, double tol_zero = kDefaultTolZero);

struct EmbedResult {
  BipartiteState state;
  Inertia expected;
  double epsilon = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> lifted;  // product basis states added
  bool lifted_seed_zeros = false;                           // shift_identity applied first
};

/// Places rho (on m1 x n1) in the top-left corner of an m2 x n2 system and
/// adds epsilon |i,j><i,j| for the first l basis states outside the corner
/// (row-major). The seed's own zeros are lifted with shift_identity first,
/// so the result has PT inertia (a1, m2 n2 - m1 n1 - l, b1 + c1 + l).
EmbedResult embed(const BipartiteState& rho, std::size_t m2, std::size_t n2, std::size_t l,
                  double tol_zero = kDefaultTolZero);

/// Same corner placement without touching the seed's zeros. Candidates are
/// the basis states whose rows vanish in both the embedded state and its
/// partial transpose: outside the corner first, then inside, each row-major.
/// Result: (a1, b1 + m2 n2 - m1 n1 - l, c1 + l).
EmbedResult embed_plain(const BipartiteState& rho, std::size_t m2, std::size_t n2, std::size_t l,
                        double tol_zero = kDefaultTolZero);

/// Number of basis states embed_plain may lift.
std::size_t embed_plain_capacity(const BipartiteState& rho, std::size_t m2, std::size_t n2,
                                 double tol_zero = kDefaultTolZero);

enum class UpdateCase { case1 = 1, case2 = 2, case3 = 3 };

struct UpdateCheck {
  std::optional<UpdateCase> which;  // empty if none of the three triples matched
  Inertia before;
  Inertia after;
  int rank_p = 0;  // positive eigenvalues of rho^Gamma
  int rank_q = 0;  // negative eigenvalues of rho^Gamma
  double range_residual = 0.0;
  bool marginal = false;
};

/// Inertia of rho^Gamma + |a,b><a,b| against the three possible outcomes
///   case1 (rank Q, d - rank P - rank Q, rank P)
///   case2 (rank Q - 1, d - rank P - rank Q, rank P + 1)
///   case3 (rank Q - 1, d + 1 - rank P - rank Q, rank P)
/// with d the dimension of rho^Gamma. Rejects |a,b> outside the range of
/// rho^Gamma (relative residual above 1e-8).
UpdateCheck rank_one_update_check(const BipartiteState& rho, std::span<const cplx> a, std::span<const cplx> b,
                                  double tol_zero = kDefaultTolZero);

/// |a> (x) |b>.
std::vector<cplx> product_vector(std::span<const cplx> a, std::span<const cplx> b);

/// Relative distance of v from the span of the eigenvectors of h whose
/// eigenvalues are not zero at tol_zero.
double range_residual(const ComplexMatrix& h, std::span<const cplx> v, double tol_zero = kDefaultTolZero);

}  // namespace pti

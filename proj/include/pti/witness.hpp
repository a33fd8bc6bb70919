#pragma once

#include <cstdint>
#include <vector>

#include "pti/inertia.hpp"
#include "pti/states.hpp"

namespace pti {

inline constexpr double kDefaultEwTol = 1e-7;

struct ProductMinimum {
  double value = 0.0;  // upper bound on min <a,b|W|a,b> over unit product vectors
  std::vector<cplx> a;
  std::vector<cplx> b;
  int best_restart = 0;
  bool converged = true;  // false if any restart hit the iteration cap
};

/// Alternating minimization: with a fixed, b is the lowest eigenvector of
/// W_b = (<a| (x) I) W (|a> (x) I), and vice versa, until the value settles.
/// Restart k starts from a random a drawn with seed mix_seed(seed, k); the
/// result does not depend on how restarts are scheduled.
ProductMinimum min_product_expectation(const ComplexMatrix& w, BipartiteDims dims, int restarts = 50,
                                       std::uint64_t seed = 1, int max_iterations = 500);

struct WitnessReport {
  ComplexMatrix matrix;  // rho^Gamma / tr(rho)
  BipartiteDims dims;
  Inertia inertia;
  bool marginal = false;
  ProductMinimum product_min;
  bool not_psd = false;                  // v_minus >= 1
  bool product_nonnegative = false;      // product_min.value >= -ew_tol
  bool ok() const { return not_psd && product_nonnegative; }
};

/// The partial transpose of an NPT state, checked against both witness
/// conditions. Rejects PPT states.
WitnessReport is_witness(const BipartiteState& rho, double ew_tol = kDefaultEwTol, int restarts = 50,
                         std::uint64_t seed = 1, double tol_zero = kDefaultTolZero);

/// Same checks on an arbitrary Hermitian operator (no NPT precondition).
WitnessReport check_witness(const ComplexMatrix& w, BipartiteDims dims, double ew_tol = kDefaultEwTol, int restarts = 50,
                            std::uint64_t seed = 1, double tol_zero = kDefaultTolZero);

/// P W P. P must satisfy P^2 = P = P^dagger within 1e-10.
ComplexMatrix compress(const ComplexMatrix& w, const ComplexMatrix& p);

}  // namespace pti

#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pti/complex_matrix.hpp"

namespace pti {

inline constexpr double kDefaultTolZero = 1e-9;

/// Counts of negative, zero and positive eigenvalues, in that order.
struct Inertia {
  int minus = 0;
  int zero = 0;
  int plus = 0;

  int dim() const { return minus + zero + plus; }
  /// "(a,b,c)"
  std::string to_string() const;
  /// "a b c", the CLI form.
  std::string to_plain() const;
  /// Accepts "(a,b,c)", "a,b,c" or "a b c".
  static Inertia parse(const std::string& text);

  friend auto operator<=>(const Inertia&, const Inertia&) = default;
};

struct InertiaResult {
  Inertia inertia;
  // Some eigenvalue sits in (tau, 10 tau] in magnitude, so the zero
  // classification depends on the threshold.
  bool marginal = false;
  double threshold = 0.0;  // tau
  std::vector<double> eigenvalues;
};

/// Classifies ascending or unordered eigenvalues against
/// tau = tol_zero * max(1, max|lambda|).
InertiaResult classify_eigenvalues(std::span<const double> eigenvalues, double tol_zero = kDefaultTolZero);

/// Inertia of a Hermitian matrix via the Jacobi eigensolver.
InertiaResult inertia_of(const ComplexMatrix& m, double tol_zero = kDefaultTolZero);

}  // namespace pti

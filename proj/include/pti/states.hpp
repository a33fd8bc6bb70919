#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pti/complex_matrix.hpp"
#include "pti/gaussian_rational.hpp"
#include "pti/inertia.hpp"

namespace pti {

struct BipartiteDims {
  std::size_t m = 1;
  std::size_t n = 1;

  std::size_t total() const { return m * n; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * n + j; }
  std::string to_string() const { return std::to_string(m) + "x" + std::to_string(n); }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

/// Amplitudes indexed i*n + j for |i>_A |j>_B. Not necessarily normalized.
struct PureState {
  BipartiteDims dims;
  std::vector<cplx> amplitudes;

  PureState() = default;
  PureState(BipartiteDims d, std::vector<cplx> amps);
  static PureState basis(BipartiteDims d, std::size_t i, std::size_t j);
  /// m x n matrix M(i,j) = psi[i*n+j].
  ComplexMatrix matricize() const;
  double norm() const { return norm2(amplitudes); }
};

/// Positive semidefinite matrix with local dimensions attached.
class BipartiteState {
 public:
  BipartiteState() = default;
  /// Validates size, Hermiticity, min eigenvalue >= -1e-10 max(1, max|rho|)
  /// and trace > 0.
  static BipartiteState make(BipartiteDims dims, ComplexMatrix matrix);
  /// No validation; for matrices that are PSD by construction.
  static BipartiteState unchecked(BipartiteDims dims, ComplexMatrix matrix);

  const BipartiteDims& dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.rows(); }

 private:
  BipartiteState(BipartiteDims d, ComplexMatrix m) : dims_(d), matrix_(std::move(m)) {}
  BipartiteDims dims_;
  ComplexMatrix matrix_;
};

/// rho^Gamma[(i,k),(j,l)] = rho[(j,k),(i,l)]: block (i,j) of the result is
/// block (j,i) of the input.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, BipartiteDims dims);
ComplexMatrix partial_transpose(const BipartiteState& rho);
RationalComplexMatrix partial_transpose(const RationalComplexMatrix& rho, BipartiteDims dims);

/// Inertia of rho^Gamma (float path).
InertiaResult pt_inertia(const BipartiteState& rho, double tol_zero = kDefaultTolZero);

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // min(m,n) singular values, descending
  ComplexMatrix basis_a;             // m x min(m,n), orthonormal columns
  ComplexMatrix basis_b;             // n x min(m,n), orthonormal columns
  std::size_t rank = 0;              // coefficients above rel_tol * largest
};

/// psi = sum_k c_k |a_k>|b_k>. Throws on the zero vector.
SchmidtDecomposition schmidt(const PureState& psi, double rel_tol = 1e-10);

/// sum_k w_k |psi_k><psi_k|.
BipartiteState dm_from_kets(std::span<const PureState> kets, std::span<const double> weights);

ComplexMatrix partial_trace_a(const ComplexMatrix& rho, BipartiteDims dims);  // rho_B, n x n
ComplexMatrix partial_trace_b(const ComplexMatrix& rho, BipartiteDims dims);  // rho_A, m x m

/// Ranks of rho_A and rho_B, counted with the inertia zero threshold.
std::pair<std::size_t, std::size_t> local_ranks(const BipartiteState& rho, double tol_zero = kDefaultTolZero);

/// (A (x) B) rho (A (x) B)^dagger. Rejects singular A or B.
BipartiteState apply_slocc(const BipartiteState& rho, const ComplexMatrix& a, const ComplexMatrix& b);

enum class Ensemble { real, complex };
Ensemble parse_ensemble(const std::string& text);
const char* to_string(Ensemble e);

/// rho = R R^dagger / tr(R R^dagger), R of shape (mn) x rank with i.i.d.
/// standard normal entries drawn column by column from a generator seeded
/// with `seed`. Bit-identical for identical arguments.
BipartiteState random_state(BipartiteDims dims, std::size_t rank, Ensemble ensemble, std::uint64_t seed);

/// The R factor of random_state, column-major (mn * rank entries).
std::vector<cplx> random_factor(BipartiteDims dims, std::size_t rank, Ensemble ensemble, std::uint64_t seed);

/// R R^dagger for a column-major (dim x cols) factor, via the accumulate kernel.
ComplexMatrix gram(std::span<const cplx> factor, std::size_t dim, std::size_t cols);

/// Invertible matrix with i.i.d. normal entries; redrawn until well conditioned.
ComplexMatrix random_invertible(std::size_t dim, Ensemble ensemble, std::uint64_t seed);

struct PencilPoint {
  cplx x;
  cplx y;
};

struct PencilResult {
  bool infinite = false;
  std::vector<PencilPoint> points;  // y = 1 when y != 0, otherwise (1:0)
};

/// Projective points (x:y) with rank(xU + yV) <= 1, from the common roots of
/// all 2x2 minors. Rejects linearly dependent U, V.
PencilResult pencil_rank1(const ComplexMatrix& u, const ComplexMatrix& v);

struct KetTerm {
  GaussianRational coefficient;
  std::size_t i = 0;
  std::size_t j = 0;
};

/// Parses "1|0,0> + 1|1,1> + 0.5|2,2>". Coefficients may be rational
/// ("1/3|1,2>"), complex ("(1+2j)|0,1>") or omitted ("-|2,2>").
std::vector<KetTerm> parse_ket_terms(const std::string& text);
PureState ket_from_terms(const std::vector<KetTerm>& terms, BipartiteDims dims);
PureState parse_ket(const std::string& text, BipartiteDims dims);

}  // namespace pti

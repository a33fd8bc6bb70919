#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "pti/complex_matrix.hpp"
#include "pti/kernels.hpp"

namespace pti {

/// Raised when an iterative solver hits its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi.
/// Rejects inputs whose Hermitian defect exceeds 1e-12 * max(1, max|M|).
EigenDecomposition herm_eig(const ComplexMatrix& m,
                            const kernels::KernelTable& k = kernels::active_kernels());

/// Eigenvalues only (ascending); skips the eigenvector accumulation.
std::vector<double> herm_eigvals(const ComplexMatrix& m,
                                 const kernels::KernelTable& k = kernels::active_kernels());

/// Determinant by LU with partial pivoting.
cplx determinant(const ComplexMatrix& m);

/// True when |det S| <= 1e-12 * max|S|^dim.
bool is_numerically_singular(const ComplexMatrix& s);

/// S M S^dagger. M must be Hermitian and S invertible of the same size.
ComplexMatrix congruence(const ComplexMatrix& m, const ComplexMatrix& s);

/// Numerical rank of an arbitrary (rectangular) matrix: number of singular
/// values above rel_tol * (largest singular value).
std::size_t numerical_rank(const ComplexMatrix& a, double rel_tol = 1e-10);

namespace detail {
std::string describe_defect(const ComplexMatrix& m);
}

}  // namespace pti

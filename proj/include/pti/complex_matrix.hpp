#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pti {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Most operations in this library require
/// it to be square; rectangular shapes appear only for matricized pure
/// states and local operators.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : ComplexMatrix(dim, dim) {}
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  /// Square matrix from nested rows; throws if ragged or not square.
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v);  // u v^dagger

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  /// Side length of a square matrix; throws std::invalid_argument otherwise.
  std::size_t dim() const;

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  double max_abs() const;
  /// max_{i,j} |M(i,j) - conj(M(j,i))|.
  double hermitian_defect() const;
  /// Defect within rel_tol * max(1, max|M|).
  bool is_hermitian(double rel_tol = 1e-12) const;

  cplx trace() const;
  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<cplx> operator*(const ComplexMatrix& a, std::span<const cplx> v);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_{i,j} |a(i,j) - b(i,j)|; shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

double norm2(std::span<const cplx> v);
cplx inner(std::span<const cplx> u, std::span<const cplx> v);  // <u|v>

}  // namespace pti

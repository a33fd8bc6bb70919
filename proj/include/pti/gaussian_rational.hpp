#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pti/complex_matrix.hpp"

namespace pti {

/// Exact element of Q(i).
struct GaussianRational {
  mpq_class re;
  mpq_class im;

  GaussianRational() = default;
  GaussianRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }
  GaussianRational(long n) : re(n), im(0) {}

  /// Exact conversion of a finite double (every finite double is dyadic).
  static GaussianRational from_double(cplx z);

  /// Parses "3/4", "-0.25", "1e-3", "1+2j", "1/2-3/4j", "2j", "-j".
  /// Throws std::invalid_argument on malformed text.
  static GaussianRational parse(std::string_view text);

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  GaussianRational conj() const { return {re, -im}; }
  /// |z|^2, exact.
  mpq_class norm() const { return re * re + im * im; }
  /// Each part rounded to the nearest double.
  cplx to_complex() const;
  /// "p/q+r/sj" form; integers print without a denominator.
  std::string to_string() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

GaussianRational operator+(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(const GaussianRational& a);
GaussianRational operator*(GaussianRational a, const GaussianRational& b);
GaussianRational operator/(GaussianRational a, const GaussianRational& b);

/// Nearest double to q (mpq's get_d truncates instead).
double nearest_double(const mpq_class& q);

/// Parses a real decimal ("-1.25e3") or fraction ("7/3") exactly.
mpq_class parse_rational(std::string_view text);

/// Square matrix over Q(i).
class RationalComplexMatrix {
 public:
  RationalComplexMatrix() = default;
  explicit RationalComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static RationalComplexMatrix from_double(const ComplexMatrix& m);

  std::size_t dim() const { return dim_; }
  GaussianRational& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const GaussianRational& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  bool is_hermitian() const;
  ComplexMatrix to_double() const;

  friend bool operator==(const RationalComplexMatrix&, const RationalComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<GaussianRational> data_;
};

}  // namespace pti

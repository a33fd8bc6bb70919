#pragma once

#include <iosfwd>
#include <string>

#include "pti/complex_matrix.hpp"
#include "pti/gaussian_rational.hpp"

namespace pti {

// Text format:
//   dim m n
//   <dim lines of dim whitespace-separated entries>
// m = n = 0 marks a matrix without bipartite structure; otherwise m*n = dim.
// Entries are "re+imj" decimals or "p/q+r/sj" rationals; a bare real is fine.
// Blank lines and lines starting with '#' are skipped.

struct MatrixFile {
  std::size_t m = 0;
  std::size_t n = 0;
  ComplexMatrix values;          // each entry rounded to the nearest double
  RationalComplexMatrix exact;   // the entries exactly as written

  bool bipartite() const { return m != 0; }
};

/// Throws std::invalid_argument with a line number on malformed input.
MatrixFile read_matrix(std::istream& in);
MatrixFile read_matrix_file(const std::string& path);

/// Decimal form with 17 significant digits, so the file round-trips exactly.
void write_matrix(std::ostream& out, const ComplexMatrix& m, std::size_t dim_a = 0, std::size_t dim_b = 0);
/// Rational form "p/q+r/sj".
void write_matrix(std::ostream& out, const RationalComplexMatrix& m, std::size_t dim_a = 0, std::size_t dim_b = 0);

/// "re+imj" with %.17g parts.
std::string format_complex(cplx z);

}  // namespace pti

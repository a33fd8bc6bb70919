#include "pti/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pti {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::invalid_argument("matrix file line " + std::to_string(line) + ": " + what);
}

bool next_content_line(std::istream& in, std::string& line, std::size_t& number) {
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

MatrixFile read_matrix(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  if (!next_content_line(in, line, number)) fail(number, "missing header 'dim m n'");
  std::istringstream header(line);
  long long dim = -1, m = -1, n = -1;
  std::string extra;
  if (!(header >> dim >> m >> n) || (header >> extra)) fail(number, "header must be 'dim m n'");
  if (dim <= 0 || m < 0 || n < 0) fail(number, "header values out of range");
  if (!((m == 0 && n == 0) || (m > 0 && n > 0 && m * n == dim)))
    fail(number, "header needs m*n = dim or m = n = 0");

  MatrixFile f;
  f.m = static_cast<std::size_t>(m);
  f.n = static_cast<std::size_t>(n);
  const std::size_t d = static_cast<std::size_t>(dim);
  f.values = ComplexMatrix(d);
  f.exact = RationalComplexMatrix(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!next_content_line(in, line, number)) fail(number, "expected " + std::to_string(d) + " rows");
    std::istringstream row(line);
    std::string token;
    std::size_t j = 0;
    while (row >> token) {
      if (j == d) fail(number, "too many entries in row");
      try {
        f.exact(i, j) = GaussianRational::parse(token);
      } catch (const std::exception& e) {
        fail(number, e.what());
      }
      f.values(i, j) = f.exact(i, j).to_complex();
      ++j;
    }
    if (j != d) fail(number, "row has " + std::to_string(j) + " entries, expected " + std::to_string(d));
  }
  if (next_content_line(in, line, number)) fail(number, "trailing content after matrix");
  return f;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return read_matrix(in);
}

std::string format_complex(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

void write_matrix(std::ostream& out, const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b) {
  const std::size_t d = m.dim();
  out << d << ' ' << dim_a << ' ' << dim_b << '\n';
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) out << (j ? " " : "") << format_complex(m(i, j));
    out << '\n';
  }
}

void write_matrix(std::ostream& out, const RationalComplexMatrix& m, std::size_t dim_a, std::size_t dim_b) {
  const std::size_t d = m.dim();
  out << d << ' ' << dim_a << ' ' << dim_b << '\n';
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) out << (j ? " " : "") << m(i, j).to_string();
    out << '\n';
  }
}

}  // namespace pti

#include "pti/gaussian_rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pti {
namespace {

[[noreturn]] void bad_number(std::string_view text) {
  throw std::invalid_argument("malformed number '" + std::string(text) + "'");
}

mpq_class pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? mpq_class(1, p) : mpq_class(p);
}

mpq_class parse_decimal(std::string_view s, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) negative = s[pos++] == '-';
  std::string digits;
  long exponent = 0;
  bool any_digit = false;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    digits += s[pos++];
    any_digit = true;
  }
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      digits += s[pos++];
      --exponent;
      any_digit = true;
    }
  }
  if (!any_digit) bad_number(whole);
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    const std::size_t digits_start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits_start || pos - digits_start > 6) bad_number(whole);
    exponent += std::stol(std::string(s.substr(start, pos - start)));
  }
  if (pos != s.size()) bad_number(whole);
  mpq_class value(mpz_class(digits, 10));
  value *= pow10(exponent);
  value.canonicalize();
  return negative ? mpq_class(-value) : value;
}

}  // namespace

mpq_class parse_rational(std::string_view text) {
  if (text.empty()) bad_number(text);
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text, text);
  const mpq_class num = parse_decimal(text.substr(0, slash), text);
  const mpq_class den = parse_decimal(text.substr(slash + 1), text);
  if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  mpq_class q = num / den;
  q.canonicalize();
  return q;
}

double nearest_double(const mpq_class& q) {
  const double t = q.get_d();
  if (!std::isfinite(t)) return t;
  const double up = std::nextafter(t, sgn(q) < 0 ? -HUGE_VAL : HUGE_VAL);
  if (!std::isfinite(up)) return t;
  const mpq_class dt = abs(q - mpq_class(t)), du = abs(mpq_class(up) - q);
  return du < dt ? up : t;
}

cplx GaussianRational::to_complex() const { return {nearest_double(re), nearest_double(im)}; }

GaussianRational GaussianRational::from_double(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("cannot convert a non-finite value to a rational");
  return {mpq_class(z.real()), mpq_class(z.imag())};
}

GaussianRational GaussianRational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad_number(text);
  if (text.back() != 'j' && text.back() != 'i') return {parse_rational(text), 0};

  const std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E' && body[k - 1] != '/') {
      split = k;
      break;
    }
  }
  const std::string_view real_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  std::string_view imag_part = split == std::string_view::npos ? body : body.substr(split);

  mpq_class im;
  if (imag_part.empty() || imag_part == "+") {
    im = 1;
  } else if (imag_part == "-") {
    im = -1;
  } else {
    im = parse_rational(imag_part.front() == '+' ? imag_part.substr(1) : imag_part);
  }
  mpq_class re = real_part.empty() ? mpq_class(0) : parse_rational(real_part);
  return {re, im};
}

std::string GaussianRational::to_string() const {
  std::string s = re.get_str();
  const std::string i = im.get_str();
  s += (sgn(im) < 0 ? "" : "+");
  s += i;
  s += 'j';
  return s;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class r = re * o.re - im * o.im;
  mpq_class i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const mpq_class d = o.norm();
  if (sgn(d) == 0) throw std::domain_error("division by zero in Q(i)");
  mpq_class r = (re * o.re + im * o.im) / d;
  mpq_class i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

RationalComplexMatrix RationalComplexMatrix::from_double(const ComplexMatrix& m) {
  RationalComplexMatrix r(m.dim());
  for (std::size_t i = 0; i < r.dim(); ++i)
    for (std::size_t j = 0; j < r.dim(); ++j) r(i, j) = GaussianRational::from_double(m(i, j));
  return r;
}

bool RationalComplexMatrix::is_hermitian() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      if (!((*this)(i, j) == (*this)(j, i).conj())) return false;
  return true;
}

ComplexMatrix RationalComplexMatrix::to_double() const {
  ComplexMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j).to_complex();
  return m;
}

}  // namespace pti

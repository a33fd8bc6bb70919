#include "pti/states.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <stdexcept>

#include "pti/kernels.hpp"
#include "pti/linalg.hpp"

namespace pti {

PureState::PureState(BipartiteDims d, std::vector<cplx> amps) : dims(d), amplitudes(std::move(amps)) {
  if (d.m == 0 || d.n == 0) throw std::invalid_argument("local dimensions must be positive");
  if (amplitudes.size() != d.total())
    throw std::invalid_argument("ket has " + std::to_string(amplitudes.size()) + " amplitudes, dims " +
                                d.to_string() + " need " + std::to_string(d.total()));
}

PureState PureState::basis(BipartiteDims d, std::size_t i, std::size_t j) {
  if (i >= d.m || j >= d.n) throw std::invalid_argument("basis index out of range");
  std::vector<cplx> a(d.total());
  a[d.index(i, j)] = 1.0;
  return {d, std::move(a)};
}

ComplexMatrix PureState::matricize() const {
  return ComplexMatrix(dims.m, dims.n, amplitudes);
}

BipartiteState BipartiteState::make(BipartiteDims dims, ComplexMatrix matrix) {
  if (dims.m == 0 || dims.n == 0) throw std::invalid_argument("local dimensions must be positive");
  if (!matrix.is_square() || matrix.rows() != dims.total())
    throw std::invalid_argument("matrix size does not match dims " + dims.to_string());
  if (!matrix.is_hermitian()) throw std::invalid_argument("state is not Hermitian: " + detail::describe_defect(matrix));
  const std::vector<double> ev = herm_eigvals(matrix);
  if (ev.front() < -1e-10 * std::max(1.0, matrix.max_abs()))
    throw std::invalid_argument("state is not positive semidefinite (min eigenvalue " + std::to_string(ev.front()) + ")");
  if (!(matrix.trace().real() > 0.0)) throw std::invalid_argument("state has zero trace");
  return {dims, std::move(matrix)};
}

BipartiteState BipartiteState::unchecked(BipartiteDims dims, ComplexMatrix matrix) {
  return {dims, std::move(matrix)};
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, BipartiteDims dims) {
  if (!rho.is_square() || rho.rows() != dims.total())
    throw std::invalid_argument("partial_transpose: matrix size does not match dims " + dims.to_string());
  ComplexMatrix out(rho.rows());
  for (std::size_t i = 0; i < dims.m; ++i)
    for (std::size_t j = 0; j < dims.m; ++j)
      for (std::size_t k = 0; k < dims.n; ++k)
        for (std::size_t l = 0; l < dims.n; ++l) out(dims.index(i, k), dims.index(j, l)) = rho(dims.index(j, k), dims.index(i, l));
  return out;
}

ComplexMatrix partial_transpose(const BipartiteState& rho) { return partial_transpose(rho.matrix(), rho.dims()); }

RationalComplexMatrix partial_transpose(const RationalComplexMatrix& rho, BipartiteDims dims) {
  if (rho.dim() != dims.total())
    throw std::invalid_argument("partial_transpose: matrix size does not match dims " + dims.to_string());
  RationalComplexMatrix out(rho.dim());
  for (std::size_t i = 0; i < dims.m; ++i)
    for (std::size_t j = 0; j < dims.m; ++j)
      for (std::size_t k = 0; k < dims.n; ++k)
        for (std::size_t l = 0; l < dims.n; ++l) out(dims.index(i, k), dims.index(j, l)) = rho(dims.index(j, k), dims.index(i, l));
  return out;
}

InertiaResult pt_inertia(const BipartiteState& rho, double tol_zero) {
  return inertia_of(partial_transpose(rho), tol_zero);
}

namespace {

// Gram-Schmidt completion of the first `have` columns of q (rows x cols).
void complete_basis(ComplexMatrix& q, std::size_t have) {
  const std::size_t rows = q.rows();
  std::size_t filled = have;
  for (std::size_t e = 0; e < rows && filled < q.cols(); ++e) {
    std::vector<cplx> v(rows);
    v[e] = 1.0;
    for (std::size_t c = 0; c < filled; ++c) {
      cplx proj = 0.0;
      for (std::size_t r = 0; r < rows; ++r) proj += std::conj(q(r, c)) * v[r];
      for (std::size_t r = 0; r < rows; ++r) v[r] -= proj * q(r, c);
    }
    const double nv = norm2(v);
    if (nv < 1e-6) continue;
    for (std::size_t r = 0; r < rows; ++r) q(r, filled) = v[r] / nv;
    ++filled;
  }
}

}  // namespace

SchmidtDecomposition schmidt(const PureState& psi, double rel_tol) {
  const std::size_t m = psi.dims.m, n = psi.dims.n, k = std::min(m, n);
  if (psi.norm() == 0.0) throw std::invalid_argument("schmidt: zero vector");
  const ComplexMatrix mat = psi.matricize();
  const ComplexMatrix mmh = mat * mat.adjoint();
  const EigenDecomposition eig = herm_eig(mmh);

  SchmidtDecomposition s;
  s.coefficients.resize(k);
  s.basis_a = ComplexMatrix(m, k);
  s.basis_b = ComplexMatrix(n, k);
  std::vector<std::vector<cplx>> b_cols;
  // Largest eigenvalues sit at the end of the ascending list.
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t src = m - 1 - c;
    std::vector<cplx> a(m);
    for (std::size_t r = 0; r < m; ++r) a[r] = eig.vectors(r, src);
    for (std::size_t r = 0; r < m; ++r) s.basis_a(r, c) = a[r];
    // M^T conj(a) = sigma b
    std::vector<cplx> b(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < m; ++r) b[j] += mat(r, j) * std::conj(a[r]);
    s.coefficients[c] = norm2(b);
    b_cols.push_back(std::move(b));
  }
  const double top = s.coefficients.front();
  for (std::size_t c = 0; c < k; ++c) {
    if (s.coefficients[c] > rel_tol * top) {
      ++s.rank;
      for (std::size_t j = 0; j < n; ++j) s.basis_b(j, c) = b_cols[c][j] / s.coefficients[c];
    }
  }
  // Eigenvalue ordering and norms can disagree in the last bits; keep descending.
  for (std::size_t c = 1; c < k; ++c) s.coefficients[c] = std::min(s.coefficients[c], s.coefficients[c - 1]);
  complete_basis(s.basis_b, s.rank);
  return s;
}

BipartiteState dm_from_kets(std::span<const PureState> kets, std::span<const double> weights) {
  if (kets.empty()) throw std::invalid_argument("dm_from_kets: no kets");
  if (kets.size() != weights.size()) throw std::invalid_argument("dm_from_kets: one weight per ket required");
  const BipartiteDims dims = kets.front().dims;
  ComplexMatrix rho(dims.total());
  for (std::size_t k = 0; k < kets.size(); ++k) {
    if (!(kets[k].dims == dims)) throw std::invalid_argument("dm_from_kets: kets have different dims");
    if (!(weights[k] > 0.0)) throw std::invalid_argument("dm_from_kets: weights must be positive");
    const auto& a = kets[k].amplitudes;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == cplx{}) continue;
      for (std::size_t j = 0; j < a.size(); ++j) rho(i, j) += weights[k] * a[i] * std::conj(a[j]);
    }
  }
  return BipartiteState::unchecked(dims, std::move(rho));
}

ComplexMatrix partial_trace_a(const ComplexMatrix& rho, BipartiteDims dims) {
  ComplexMatrix out(dims.n);
  for (std::size_t k = 0; k < dims.n; ++k)
    for (std::size_t l = 0; l < dims.n; ++l)
      for (std::size_t i = 0; i < dims.m; ++i) out(k, l) += rho(dims.index(i, k), dims.index(i, l));
  return out;
}

ComplexMatrix partial_trace_b(const ComplexMatrix& rho, BipartiteDims dims) {
  ComplexMatrix out(dims.m);
  for (std::size_t i = 0; i < dims.m; ++i)
    for (std::size_t j = 0; j < dims.m; ++j)
      for (std::size_t k = 0; k < dims.n; ++k) out(i, j) += rho(dims.index(i, k), dims.index(j, k));
  return out;
}

std::pair<std::size_t, std::size_t> local_ranks(const BipartiteState& rho, double tol_zero) {
  const Inertia a = inertia_of(partial_trace_b(rho.matrix(), rho.dims()), tol_zero).inertia;
  const Inertia b = inertia_of(partial_trace_a(rho.matrix(), rho.dims()), tol_zero).inertia;
  return {static_cast<std::size_t>(a.plus + a.minus), static_cast<std::size_t>(b.plus + b.minus)};
}

BipartiteState apply_slocc(const BipartiteState& rho, const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || a.rows() != rho.dims().m || !b.is_square() || b.rows() != rho.dims().n)
    throw std::invalid_argument("apply_slocc: local operator sizes do not match dims " + rho.dims().to_string());
  if (is_numerically_singular(a) || is_numerically_singular(b)) throw std::invalid_argument("apply_slocc: singular local operator");
  return BipartiteState::unchecked(rho.dims(), congruence(rho.matrix(), kron(a, b)));
}

Ensemble parse_ensemble(const std::string& text) {
  if (text == "real") return Ensemble::real;
  if (text == "complex") return Ensemble::complex;
  throw std::invalid_argument("ensemble must be 'real' or 'complex', got '" + text + "'");
}

const char* to_string(Ensemble e) { return e == Ensemble::real ? "real" : "complex"; }

std::vector<cplx> random_factor(BipartiteDims dims, std::size_t rank, Ensemble ensemble, std::uint64_t seed) {
  const std::size_t d = dims.total();
  if (rank < 1 || rank > d)
    throw std::invalid_argument("rank " + std::to_string(rank) + " outside [1, " + std::to_string(d) + "]");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<cplx> r(d * rank);
  for (std::size_t c = 0; c < rank; ++c)
    for (std::size_t i = 0; i < d; ++i) {
      const double re = normal(gen);
      const double im = ensemble == Ensemble::complex ? normal(gen) : 0.0;
      r[c * d + i] = cplx(re, im);
    }
  return r;
}

ComplexMatrix gram(std::span<const cplx> factor, std::size_t dim, std::size_t cols) {
  if (factor.size() != dim * cols) throw std::invalid_argument("gram: factor size mismatch");
  const kernels::KernelTable& k = kernels::active_kernels();
  std::vector<double> acc_r(dim * dim, 0.0), acc_i(dim * dim, 0.0);
  std::vector<double> yr(dim), yi(dim);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t i = 0; i < dim; ++i) {
      yr[i] = factor[c * dim + i].real();
      yi[i] = factor[c * dim + i].imag();
    }
    for (std::size_t i = 0; i < dim; ++i) k.accumulate_outer(yr[i], yi[i], yr.data(), yi.data(), &acc_r[i * dim], &acc_i[i * dim], dim);
  }
  ComplexMatrix g(dim);
  for (std::size_t i = 0; i < dim * dim; ++i) g.data()[i] = cplx(acc_r[i], acc_i[i]);
  return g;
}

BipartiteState random_state(BipartiteDims dims, std::size_t rank, Ensemble ensemble, std::uint64_t seed) {
  const std::vector<cplx> r = random_factor(dims, rank, ensemble, seed);
  ComplexMatrix rho = gram(r, dims.total(), rank);
  const double tr = rho.trace().real();
  for (cplx& z : rho.data()) z /= tr;
  return BipartiteState::unchecked(dims, std::move(rho));
}

ComplexMatrix random_invertible(std::size_t dim, Ensemble ensemble, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    ComplexMatrix s(dim);
    for (cplx& z : s.data()) z = cplx(normal(gen), ensemble == Ensemble::complex ? normal(gen) : 0.0);
    // Reject draws that are close to singular relative to their scale.
    if (std::abs(determinant(s)) > 1e-3 * std::pow(s.max_abs(), static_cast<double>(dim))) return s;
  }
}

namespace {

struct Quadratic {
  cplx a, b, c;  // a x^2 + b xy + c y^2
};

// Unit-normalized representative for projective comparison.
std::pair<cplx, cplx> unit(cplx x, cplx y) {
  const double r = std::sqrt(std::norm(x) + std::norm(y));
  return {x / r, y / r};
}

double projective_distance(const PencilPoint& p, const PencilPoint& q) {
  const auto [px, py] = unit(p.x, p.y);
  const auto [qx, qy] = unit(q.x, q.y);
  return std::abs(px * qy - py * qx);
}

std::vector<PencilPoint> roots(const Quadratic& q, double tiny) {
  std::vector<PencilPoint> out;
  if (std::abs(q.a) <= tiny) {
    out.push_back({1.0, 0.0});
    if (std::abs(q.b) > tiny) out.push_back({-q.c / q.b, 1.0});
    return out;
  }
  const cplx disc = std::sqrt(q.b * q.b - 4.0 * q.a * q.c);
  // Stable pairing: pick the larger-magnitude combination first.
  const cplx s = (std::abs(-q.b + disc) >= std::abs(-q.b - disc)) ? (-q.b + disc) : (-q.b - disc);
  if (std::abs(s) <= tiny) {
    out.push_back({0.0, 1.0});  // b = c = 0: double root x = 0
    return out;
  }
  const cplx r1 = s / (2.0 * q.a);
  const cplx r2 = (2.0 * q.c) / s;
  out.push_back({r1, 1.0});
  out.push_back({r2, 1.0});
  return out;
}

PencilPoint normalize(PencilPoint p) {
  const auto [x, y] = unit(p.x, p.y);
  if (std::abs(y) <= 1e-12) return {1.0, 0.0};
  return {x / y, 1.0};
}

}  // namespace

PencilResult pencil_rank1(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) throw std::invalid_argument("pencil_rank1: shape mismatch");
  const std::size_t rows = u.rows(), cols = u.cols();
  ComplexMatrix pair(rows * cols, 2);
  for (std::size_t k = 0; k < rows * cols; ++k) {
    pair(k, 0) = u.data()[k];
    pair(k, 1) = v.data()[k];
  }
  if (numerical_rank(pair) < 2) throw std::invalid_argument("pencil_rank1: U and V are linearly dependent");

  const double scale = std::max(u.max_abs(), v.max_abs());
  const double tiny = 1e-12 * scale * scale;
  std::vector<Quadratic> minors;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = i + 1; k < rows; ++k)
      for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t l = j + 1; l < cols; ++l) {
          Quadratic q;
          q.a = u(i, j) * u(k, l) - u(i, l) * u(k, j);
          q.b = u(i, j) * v(k, l) + v(i, j) * u(k, l) - u(i, l) * v(k, j) - v(i, l) * u(k, j);
          q.c = v(i, j) * v(k, l) - v(i, l) * v(k, j);
          if (std::abs(q.a) > tiny || std::abs(q.b) > tiny || std::abs(q.c) > tiny) minors.push_back(q);
        }

  PencilResult result;
  if (minors.empty()) {
    result.infinite = true;
    return result;
  }
  constexpr double kMatch = 1e-8;
  std::vector<PencilPoint> candidates;
  for (const PencilPoint& p : roots(minors.front(), tiny)) {
    bool dup = false;
    for (const PencilPoint& c : candidates) dup = dup || projective_distance(p, c) <= kMatch;
    if (!dup) candidates.push_back(p);
  }
  for (std::size_t t = 1; t < minors.size(); ++t) {
    const std::vector<PencilPoint> rs = roots(minors[t], tiny);
    std::vector<PencilPoint> kept;
    for (const PencilPoint& c : candidates) {
      bool match = false;
      for (const PencilPoint& r : rs) match = match || projective_distance(c, r) <= kMatch;
      if (!match) {
        // Near-double roots lose half the digits in the square root, so also
        // accept a candidate that annihilates the minor to working precision.
        const auto [x, y] = unit(c.x, c.y);
        const Quadratic& q = minors[t];
        match = std::abs(q.a * x * x + q.b * x * y + q.c * y * y) <= 1e-10 * scale * scale;
      }
      if (match) kept.push_back(c);
    }
    candidates = std::move(kept);
  }
  for (const PencilPoint& c : candidates) result.points.push_back(normalize(c));
  return result;
}

std::vector<KetTerm> parse_ket_terms(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto bad = [&](const std::string& why) -> std::invalid_argument {
    return std::invalid_argument("malformed ket '" + text + "': " + why);
  };
  std::vector<KetTerm> terms;
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (!terms.empty()) {
      throw bad("expected '+' or '-' between terms");
    }
    GaussianRational coef(1);
    if (pos < s.size() && s[pos] == '(') {
      const std::size_t close = s.find(')', pos);
      if (close == std::string::npos) throw bad("unbalanced parenthesis");
      coef = GaussianRational::parse(s.substr(pos + 1, close - pos - 1));
      pos = close + 1;
    } else {
      const std::size_t bar = s.find('|', pos);
      if (bar == std::string::npos) throw bad("missing '|'");
      std::string c = s.substr(pos, bar - pos);
      if (!c.empty() && c.back() == '*') c.pop_back();
      if (!c.empty()) coef = GaussianRational::parse(c);
      pos = bar;
    }
    if (pos < s.size() && s[pos] == '*') ++pos;
    if (pos >= s.size() || s[pos] != '|') throw bad("missing '|'");
    const std::size_t comma = s.find(',', pos);
    const std::size_t close = s.find('>', pos);
    if (comma == std::string::npos || close == std::string::npos || comma > close) throw bad("expected |i,j>");
    KetTerm t;
    try {
      std::size_t used = 0;
      const std::string is = s.substr(pos + 1, comma - pos - 1), js = s.substr(comma + 1, close - comma - 1);
      t.i = std::stoul(is, &used);
      if (used != is.size()) throw bad("bad index");
      t.j = std::stoul(js, &used);
      if (used != js.size()) throw bad("bad index");
    } catch (const std::invalid_argument&) {
      throw bad("bad index");
    }
    t.coefficient = negative ? -coef : coef;
    terms.push_back(std::move(t));
    pos = close + 1;
  }
  if (terms.empty()) throw bad("no terms");
  return terms;
}

PureState ket_from_terms(const std::vector<KetTerm>& terms, BipartiteDims dims) {
  std::vector<cplx> a(dims.total());
  for (const KetTerm& t : terms) {
    if (t.i >= dims.m || t.j >= dims.n)
      throw std::invalid_argument("ket index |" + std::to_string(t.i) + "," + std::to_string(t.j) + "> outside dims " + dims.to_string());
    a[dims.index(t.i, t.j)] += t.coefficient.to_complex();
  }
  return {dims, std::move(a)};
}

PureState parse_ket(const std::string& text, BipartiteDims dims) { return ket_from_terms(parse_ket_terms(text), dims); }

}  // namespace pti

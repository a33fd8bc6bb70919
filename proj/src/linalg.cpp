#include "pti/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace pti {
namespace {

constexpr int kMaxSweeps = 60;
constexpr double kOffDiagonalTol = 2.220446049250313e-16;  // relative to max|M|

// Split-complex working copy of a Hermitian matrix plus, optionally, the
// accumulated rotations stored as rows (row k is eigenvector k).
struct JacobiWork {
  std::size_t n = 0;
  std::vector<double> ar, ai;
  std::vector<double> vr, vi;
};

JacobiWork load_hermitian(const ComplexMatrix& m, bool with_vectors) {
  const std::size_t n = m.dim();
  const double defect = m.hermitian_defect();
  if (defect > 1e-12 * std::max(1.0, m.max_abs())) {
    throw std::invalid_argument("matrix is not Hermitian: " + detail::describe_defect(m));
  }
  JacobiWork w;
  w.n = n;
  w.ar.assign(n * n, 0.0);
  w.ai.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    w.ar[i * n + i] = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx z = m(i, j);
      w.ar[i * n + j] = z.real();
      w.ai[i * n + j] = z.imag();
      w.ar[j * n + i] = z.real();
      w.ai[j * n + i] = -z.imag();
    }
  }
  if (with_vectors) {
    w.vr.assign(n * n, 0.0);
    w.vi.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) w.vr[i * n + i] = 1.0;
  }
  return w;
}

double max_off_diagonal(const JacobiWork& w, const kernels::KernelTable& k) {
  double off = 0.0;
  const std::size_t n = w.n;
  for (std::size_t p = 0; p + 1 < n; ++p) {
    const std::size_t begin = p * n + p + 1;
    off = std::max(off, k.max_abs(&w.ar[begin], n - p - 1));
    off = std::max(off, k.max_abs(&w.ai[begin], n - p - 1));
  }
  return off;
}

void rotate(JacobiWork& w, std::size_t p, std::size_t q, const kernels::KernelTable& k) {
  const std::size_t n = w.n;
  const double re = w.ar[p * n + q], im = w.ai[p * n + q];
  const double r = std::hypot(re, im);
  if (r == 0.0) return;
  const double app = w.ar[p * n + p], aqq = w.ar[q * n + q];
  const double theta = (aqq - app) / (2.0 * r);
  double t;
  if (std::fabs(theta) > 1e150) {
    t = 1.0 / (2.0 * theta);
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const cplx phase(re / r, im / r);

  // Rows p, q of U^dagger A, then restore Hermitian columns.
  k.rotate_pair(&w.ar[p * n], &w.ai[p * n], &w.ar[q * n], &w.ai[q * n], n, c, -s * phase, s, c * phase);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == p || j == q) continue;
    w.ar[j * n + p] = w.ar[p * n + j];
    w.ai[j * n + p] = -w.ai[p * n + j];
    w.ar[j * n + q] = w.ar[q * n + j];
    w.ai[j * n + q] = -w.ai[q * n + j];
  }
  w.ar[p * n + p] = app - t * r;
  w.ar[q * n + q] = aqq + t * r;
  w.ai[p * n + p] = w.ai[q * n + q] = 0.0;
  w.ar[p * n + q] = w.ai[p * n + q] = 0.0;
  w.ar[q * n + p] = w.ai[q * n + p] = 0.0;

  if (!w.vr.empty()) {
    const cplx back = std::conj(phase);
    k.rotate_pair(&w.vr[p * n], &w.vi[p * n], &w.vr[q * n], &w.vi[q * n], n, c, -s * back, s, c * back);
  }
}

void run_jacobi(JacobiWork& w, const kernels::KernelTable& k) {
  const std::size_t n = w.n;
  const double scale = std::max(k.max_abs(w.ar.data(), n * n), k.max_abs(w.ai.data(), n * n));
  if (scale == 0.0) return;
  const double tol = kOffDiagonalTol * scale;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (max_off_diagonal(w, k) <= tol) return;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(w, p, q, k);
  }
  if (max_off_diagonal(w, k) <= tol) return;
  throw ConvergenceError("Jacobi eigensolver did not converge in " + std::to_string(kMaxSweeps) +
                         " sweeps (dimension " + std::to_string(n) + ")");
}

}  // namespace

namespace detail {
std::string describe_defect(const ComplexMatrix& m) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "max |M(i,j) - conj(M(j,i))| = %.3e", m.hermitian_defect());
  return buf;
}
}  // namespace detail

EigenDecomposition herm_eig(const ComplexMatrix& m, const kernels::KernelTable& k) {
  JacobiWork w = load_hermitian(m, true);
  run_jacobi(w, k);
  const std::size_t n = w.n;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return w.ar[a * n + a] < w.ar[b * n + b]; });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    out.values[col] = w.ar[src * n + src];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, col) = cplx(w.vr[src * n + i], w.vi[src * n + i]);
  }
  return out;
}

std::vector<double> herm_eigvals(const ComplexMatrix& m, const kernels::KernelTable& k) {
  JacobiWork w = load_hermitian(m, false);
  run_jacobi(w, k);
  std::vector<double> values(w.n);
  for (std::size_t i = 0; i < w.n; ++i) values[i] = w.ar[i * w.n + i];
  std::sort(values.begin(), values.end());
  return values;
}

cplx determinant(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix a = m;
  cplx det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == cplx{}) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

bool is_numerically_singular(const ComplexMatrix& s) {
  const std::size_t n = s.dim();
  const double scale = std::pow(s.max_abs(), static_cast<double>(n));
  return scale == 0.0 || std::abs(determinant(s)) <= 1e-12 * scale;
}

ComplexMatrix congruence(const ComplexMatrix& m, const ComplexMatrix& s) {
  if (!m.is_hermitian()) throw std::invalid_argument("congruence: M is not Hermitian: " + detail::describe_defect(m));
  if (s.rows() != m.dim() || s.cols() != m.dim()) throw std::invalid_argument("congruence: dimension mismatch");
  if (is_numerically_singular(s)) throw std::invalid_argument("congruence: S is singular");
  ComplexMatrix r = s * m * s.adjoint();
  const std::size_t n = r.dim();
  for (std::size_t i = 0; i < n; ++i) {
    r(i, i) = r(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (r(i, j) + std::conj(r(j, i)));
      r(i, j) = avg;
      r(j, i) = std::conj(avg);
    }
  }
  return r;
}

std::size_t numerical_rank(const ComplexMatrix& a, double rel_tol) {
  const std::size_t m = a.rows(), n = a.cols();
  if (m == 0 || n == 0) return 0;
  // Eigenvalues of [[0, A], [A^dagger, 0]] are +-sigma_k plus |m-n| zeros,
  // which keeps small singular values accurate to eps * sigma_max.
  ComplexMatrix h(m + n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      h(i, m + j) = a(i, j);
      h(m + j, i) = std::conj(a(i, j));
    }
  const std::vector<double> ev = herm_eigvals(h);
  const double top = std::max(std::fabs(ev.front()), std::fabs(ev.back()));
  if (top == 0.0) return 0;
  const double tau = rel_tol * top;
  std::size_t positive = 0;
  for (double v : ev)
    if (v > tau) ++positive;
  return positive;
}

}  // namespace pti

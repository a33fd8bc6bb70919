#include "pti/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pti/linalg.hpp"

namespace pti {

double negativity(const BipartiteState& rho, double tol_zero) {
  const double tr = rho.matrix().trace().real();
  if (!(tr > 0.0)) throw std::invalid_argument("negativity: state has zero trace");
  ComplexMatrix pt = partial_transpose(rho);
  pt *= 1.0 / tr;
  const InertiaResult r = inertia_of(pt, tol_zero);
  double sum = 0.0;
  for (double v : r.eigenvalues)
    if (v < -r.threshold) sum -= v;
  return sum;
}

PptClass classify_ppt(const BipartiteState& rho, double tol_zero) {
  const InertiaResult r = pt_inertia(rho, tol_zero);
  return {r.inertia.minus >= 1, r.marginal, r.inertia};
}

Inertia pure_inertia(int r, int m, int n) {
  if (m < 1 || n < 1 || r < 1 || r > std::min(m, n))
    throw std::invalid_argument("pure_inertia: need 1 <= r <= min(m, n)");
  return {(r * r - r) / 2, m * n - r * r, (r * r + r) / 2};
}

ShiftResult shift_identity(const BipartiteState& rho, double tol_zero) {
  const InertiaResult r = pt_inertia(rho, tol_zero);
  double smallest = 0.0;
  for (double v : r.eigenvalues)
    if (v < -r.threshold) smallest = smallest == 0.0 ? -v : std::min(smallest, -v);
  if (smallest == 0.0) throw std::invalid_argument("shift_identity: state is PPT, no negative eigenvalue to keep");
  const double x = 0.5 * smallest;
  ComplexMatrix sigma = rho.matrix();
  for (std::size_t i = 0; i < sigma.rows(); ++i) sigma(i, i) += x;
  return {BipartiteState::unchecked(rho.dims(), std::move(sigma)), x};
}

namespace {

ComplexMatrix corner(const BipartiteState& rho, BipartiteDims big) {
  const BipartiteDims small = rho.dims();
  ComplexMatrix out(big.total());
  for (std::size_t i = 0; i < small.m; ++i)
    for (std::size_t k = 0; k < small.n; ++k)
      for (std::size_t j = 0; j < small.m; ++j)
        for (std::size_t l = 0; l < small.n; ++l)
          out(big.index(i, k), big.index(j, l)) = rho.matrix()(small.index(i, k), small.index(j, l));
  return out;
}

void check_embed_dims(const BipartiteState& rho, std::size_t m2, std::size_t n2) {
  if (m2 < rho.dims().m || n2 < rho.dims().n)
    throw std::invalid_argument("embed: target " + std::to_string(m2) + "x" + std::to_string(n2) +
                                " is smaller than " + rho.dims().to_string());
}

// 1e-3 times the smallest eigenvalue magnitude above the zero threshold.
double default_epsilon(const InertiaResult& r) {
  double smallest = 0.0;
  for (double v : r.eigenvalues) {
    const double a = std::fabs(v);
    if (a > r.threshold) smallest = smallest == 0.0 ? a : std::min(smallest, a);
  }
  return 1e-3 * (smallest == 0.0 ? 1.0 : smallest);
}

bool row_is_zero(const ComplexMatrix& m, std::size_t row) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(row, j) != cplx{}) return false;
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> plain_candidates(const BipartiteState& rho, BipartiteDims big) {
  const ComplexMatrix placed = corner(rho, big);
  const ComplexMatrix placed_pt = partial_transpose(placed, big);
  std::vector<std::pair<std::size_t, std::size_t>> outside, inside;
  for (std::size_t i = 0; i < big.m; ++i)
    for (std::size_t j = 0; j < big.n; ++j) {
      const std::size_t k = big.index(i, j);
      if (!row_is_zero(placed, k) || !row_is_zero(placed_pt, k)) continue;
      const bool in_corner = i < rho.dims().m && j < rho.dims().n;
      (in_corner ? inside : outside).emplace_back(i, j);
    }
  outside.insert(outside.end(), inside.begin(), inside.end());
  return outside;
}

// Adds epsilon |i,j><i,j| for the listed states, halving epsilon while the
// result is marginal or misses the expected inertia (at most 10 times).
EmbedResult lift(const ComplexMatrix& base, BipartiteDims big, std::vector<std::pair<std::size_t, std::size_t>> states,
                 double epsilon, Inertia expected, double tol_zero) {
  EmbedResult out;
  out.expected = expected;
  out.lifted = std::move(states);
  for (int attempt = 0;; ++attempt) {
    ComplexMatrix m = base;
    for (const auto& [i, j] : out.lifted) m(big.index(i, j), big.index(i, j)) += epsilon;
    out.state = BipartiteState::unchecked(big, std::move(m));
    out.epsilon = epsilon;
    const InertiaResult r = pt_inertia(out.state, tol_zero);
    if ((r.inertia == expected && !r.marginal) || attempt == 10) break;
    epsilon *= 0.5;
  }
  return out;
}

}  // namespace

EmbedResult embed(const BipartiteState& rho, std::size_t m2, std::size_t n2, std::size_t l, double tol_zero) {
  check_embed_dims(rho, m2, n2);
  const BipartiteDims big{m2, n2};
  const std::size_t delta = big.total() - rho.dims().total();
  if (l > delta) throw std::invalid_argument("embed: l must lie in [0, " + std::to_string(delta) + "]");

  const InertiaResult seed = pt_inertia(rho, tol_zero);
  const Inertia s = seed.inertia;
  BipartiteState work = rho;
  bool shifted = false;
  if (s.zero > 0) {
    work = shift_identity(rho, tol_zero).sigma;
    shifted = true;
  }
  const InertiaResult lifted_seed = shifted ? pt_inertia(work, tol_zero) : seed;

  std::vector<std::pair<std::size_t, std::size_t>> states;
  for (std::size_t i = 0; i < m2 && states.size() < l; ++i)
    for (std::size_t j = 0; j < n2 && states.size() < l; ++j)
      if (i >= rho.dims().m || j >= rho.dims().n) states.emplace_back(i, j);

  const Inertia expected{s.minus, static_cast<int>(delta - l), s.zero + s.plus + static_cast<int>(l)};
  EmbedResult out = lift(corner(work, big), big, std::move(states), default_epsilon(lifted_seed), expected, tol_zero);
  out.lifted_seed_zeros = shifted;
  return out;
}

std::size_t embed_plain_capacity(const BipartiteState& rho, std::size_t m2, std::size_t n2, double) {
  check_embed_dims(rho, m2, n2);
  return plain_candidates(rho, {m2, n2}).size();
}

EmbedResult embed_plain(const BipartiteState& rho, std::size_t m2, std::size_t n2, std::size_t l, double tol_zero) {
  check_embed_dims(rho, m2, n2);
  const BipartiteDims big{m2, n2};
  auto candidates = plain_candidates(rho, big);
  if (l > candidates.size())
    throw std::invalid_argument("embed_plain: l must lie in [0, " + std::to_string(candidates.size()) + "]");
  candidates.resize(l);
  const InertiaResult seed = pt_inertia(rho, tol_zero);
  const Inertia s = seed.inertia;
  const int delta = static_cast<int>(big.total() - rho.dims().total());
  const Inertia expected{s.minus, s.zero + delta - static_cast<int>(l), s.plus + static_cast<int>(l)};
  return lift(corner(rho, big), big, std::move(candidates), default_epsilon(seed), expected, tol_zero);
}

std::vector<cplx> product_vector(std::span<const cplx> a, std::span<const cplx> b) {
  std::vector<cplx> v(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) v[i * b.size() + j] = a[i] * b[j];
  return v;
}

double range_residual(const ComplexMatrix& h, std::span<const cplx> v, double tol_zero) {
  const EigenDecomposition eig = herm_eig(h);
  const InertiaResult r = classify_eigenvalues(eig.values, tol_zero);
  const std::size_t d = h.rows();
  std::vector<cplx> rest(v.begin(), v.end());
  for (std::size_t c = 0; c < d; ++c) {
    if (std::fabs(eig.values[c]) <= r.threshold) continue;
    cplx proj = 0.0;
    for (std::size_t i = 0; i < d; ++i) proj += std::conj(eig.vectors(i, c)) * v[i];
    for (std::size_t i = 0; i < d; ++i) rest[i] -= proj * eig.vectors(i, c);
  }
  const double nv = norm2(v);
  return nv == 0.0 ? 0.0 : norm2(rest) / nv;
}

UpdateCheck rank_one_update_check(const BipartiteState& rho, std::span<const cplx> a, std::span<const cplx> b,
                                  double tol_zero) {
  if (a.size() != rho.dims().m || b.size() != rho.dims().n)
    throw std::invalid_argument("rank_one_update_check: local vector sizes do not match dims " + rho.dims().to_string());
  const ComplexMatrix pt = partial_transpose(rho);
  const std::vector<cplx> v = product_vector(a, b);

  UpdateCheck out;
  out.range_residual = range_residual(pt, v, tol_zero);
  if (out.range_residual > 1e-8)
    throw std::invalid_argument("rank_one_update_check: |a,b> is not in the range of rho^Gamma (residual " +
                                std::to_string(out.range_residual) + ")");
  const InertiaResult before = inertia_of(pt, tol_zero);
  const InertiaResult after = inertia_of(pt + ComplexMatrix::outer(v, v), tol_zero);
  out.before = before.inertia;
  out.after = after.inertia;
  out.marginal = before.marginal || after.marginal;
  out.rank_p = before.inertia.plus;
  out.rank_q = before.inertia.minus;
  const int d = static_cast<int>(pt.rows());
  const int p = out.rank_p, q = out.rank_q;
  if (out.after == Inertia{q, d - p - q, p}) {
    out.which = UpdateCase::case1;
  } else if (out.after == Inertia{q - 1, d - p - q, p + 1}) {
    out.which = UpdateCase::case2;
  } else if (out.after == Inertia{q - 1, d + 1 - p - q, p}) {
    out.which = UpdateCase::case3;
  }
  return out;
}

}  // namespace pti

#include "pti/witness.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "pti/linalg.hpp"
#include "pti/seeding.hpp"

namespace pti {
namespace {

// (<a| (x) I) W (|a> (x) I), an n x n matrix.
ComplexMatrix reduce_a(const ComplexMatrix& w, BipartiteDims d, const std::vector<cplx>& a) {
  ComplexMatrix out(d.n);
  for (std::size_t i = 0; i < d.m; ++i)
    for (std::size_t j = 0; j < d.m; ++j) {
      const cplx f = std::conj(a[i]) * a[j];
      if (f == cplx{}) continue;
      for (std::size_t k = 0; k < d.n; ++k)
        for (std::size_t l = 0; l < d.n; ++l) out(k, l) += f * w(d.index(i, k), d.index(j, l));
    }
  return out;
}

ComplexMatrix reduce_b(const ComplexMatrix& w, BipartiteDims d, const std::vector<cplx>& b) {
  ComplexMatrix out(d.m);
  for (std::size_t k = 0; k < d.n; ++k)
    for (std::size_t l = 0; l < d.n; ++l) {
      const cplx f = std::conj(b[k]) * b[l];
      if (f == cplx{}) continue;
      for (std::size_t i = 0; i < d.m; ++i)
        for (std::size_t j = 0; j < d.m; ++j) out(i, j) += f * w(d.index(i, k), d.index(j, l));
    }
  return out;
}

// Lowest eigenpair; the reduced matrices are Hermitian up to rounding.
std::pair<double, std::vector<cplx>> lowest(ComplexMatrix h) {
  const std::size_t n = h.rows();
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) h(j, i) = std::conj(h(i, j));
  }
  const EigenDecomposition e = herm_eig(h);
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = e.vectors(i, 0);
  return {e.values[0], std::move(v)};
}

}  // namespace

ProductMinimum min_product_expectation(const ComplexMatrix& w, BipartiteDims dims, int restarts, std::uint64_t seed,
                                       int max_iterations) {
  if (!w.is_square() || w.rows() != dims.total()) throw std::invalid_argument("min_product_expectation: size mismatch");
  if (!w.is_hermitian()) throw std::invalid_argument("min_product_expectation: W is not Hermitian");
  if (restarts < 1) throw std::invalid_argument("min_product_expectation: restarts >= 1");
  const double scale = std::max(1.0, w.max_abs());
  ProductMinimum best;
  best.value = HUGE_VAL;
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 gen(mix_seed(seed, static_cast<std::uint64_t>(r)));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cplx> a(dims.m);
    for (cplx& z : a) z = cplx(normal(gen), normal(gen));
    const double na = norm2(a);
    for (cplx& z : a) z /= na;
    std::vector<cplx> b;
    double value = HUGE_VAL;
    bool settled = false;
    for (int it = 0; it < max_iterations; ++it) {
      auto [vb, bb] = lowest(reduce_a(w, dims, a));
      b = std::move(bb);
      auto [va, aa] = lowest(reduce_b(w, dims, b));
      a = std::move(aa);
      const double prev = value;
      value = std::min(va, vb);
      if (std::fabs(prev - value) <= 1e-14 * scale) {
        settled = true;
        break;
      }
    }
    if (!settled) best.converged = false;
    if (value < best.value) {
      best.value = value;
      best.a = a;
      best.b = b;
      best.best_restart = r;
    }
  }
  return best;
}

WitnessReport check_witness(const ComplexMatrix& w, BipartiteDims dims, double ew_tol, int restarts, std::uint64_t seed,
                            double tol_zero) {
  WitnessReport rep;
  rep.matrix = w;
  rep.dims = dims;
  const InertiaResult in = inertia_of(w, tol_zero);
  rep.inertia = in.inertia;
  rep.marginal = in.marginal;
  rep.product_min = min_product_expectation(w, dims, restarts, seed);
  rep.not_psd = in.inertia.minus >= 1;
  rep.product_nonnegative = rep.product_min.value >= -ew_tol;
  return rep;
}

WitnessReport is_witness(const BipartiteState& rho, double ew_tol, int restarts, std::uint64_t seed, double tol_zero) {
  const double tr = rho.matrix().trace().real();
  if (!(tr > 0.0)) throw std::invalid_argument("is_witness: state has zero trace");
  ComplexMatrix w = partial_transpose(rho);
  w *= 1.0 / tr;
  if (inertia_of(w, tol_zero).inertia.minus == 0) throw std::invalid_argument("is_witness: state is PPT");
  return check_witness(w, rho.dims(), ew_tol, restarts, seed, tol_zero);
}

ComplexMatrix compress(const ComplexMatrix& w, const ComplexMatrix& p) {
  if (!w.is_square() || !p.is_square() || w.rows() != p.rows()) throw std::invalid_argument("compress: size mismatch");
  const double tol = 1e-10 * std::max(1.0, p.max_abs());
  if (p.hermitian_defect() > tol || max_abs_diff(p * p, p) > tol)
    throw std::invalid_argument("compress: P is not an orthogonal projector");
  return p * w * p;
}

}  // namespace pti

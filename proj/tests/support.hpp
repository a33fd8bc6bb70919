#pragma once

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "pti/analysis.hpp"
#include "pti/linalg.hpp"
#include "pti/states.hpp"

namespace pti::testing {

inline std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& g, bool complex = true) {
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (cplx& x : v) x = complex ? cplx(d(g), d(g)) : cplx(d(g), 0.0);
  return v;
}

// A product vector |a,b> orthogonal to ker(rho^Gamma), with a random and b
// solving the linear conditions. Needs dim ker < n.
inline std::optional<std::pair<std::vector<cplx>, std::vector<cplx>>> product_in_range(const BipartiteState& rho,
                                                                                        std::mt19937_64& g) {
  const BipartiteDims d = rho.dims();
  const EigenDecomposition eig = herm_eig(partial_transpose(rho));
  const InertiaResult cls = classify_eigenvalues(eig.values);
  std::vector<std::size_t> kernel;
  for (std::size_t c = 0; c < eig.values.size(); ++c)
    if (std::abs(eig.values[c]) <= cls.threshold) kernel.push_back(c);
  if (kernel.size() >= d.n) return std::nullopt;
  std::vector<cplx> a = random_vector(d.m, g);
  if (kernel.empty()) return std::make_pair(a, random_vector(d.n, g));
  ComplexMatrix e(kernel.size(), d.n);
  for (std::size_t r = 0; r < kernel.size(); ++r)
    for (std::size_t j = 0; j < d.n; ++j)
      for (std::size_t i = 0; i < d.m; ++i) e(r, j) += std::conj(eig.vectors(d.index(i, j), kernel[r])) * a[i];
  const EigenDecomposition null = herm_eig(e.adjoint() * e);
  std::vector<cplx> b(d.n);
  for (std::size_t j = 0; j < d.n; ++j) b[j] = null.vectors(j, 0);
  return std::make_pair(a, b);
}

// Random SLOCC image of sum_{k<r} |k,k>.
inline PureState slocc_pure(BipartiteDims d, std::size_t r, std::uint64_t seed) {
  PureState psi(d, std::vector<cplx>(d.total()));
  for (std::size_t k = 0; k < r; ++k) psi.amplitudes[d.index(k, k)] = 1.0;
  const ComplexMatrix a = random_invertible(d.m, Ensemble::complex, 2 * seed);
  const ComplexMatrix b = random_invertible(d.n, Ensemble::complex, 2 * seed + 1);
  return PureState(d, kron(a, b) * std::span<const cplx>(psi.amplitudes));
}

}  // namespace pti::testing

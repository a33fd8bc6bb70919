#include "pti/exact_inertia.hpp"

#include <stdexcept>
#include <vector>

namespace pti {

Inertia exact_inertia(const RationalComplexMatrix& m) {
  if (!m.is_hermitian()) throw std::invalid_argument("exact_inertia: matrix is not exactly Hermitian");
  RationalComplexMatrix a = m;
  std::vector<std::size_t> active(m.dim());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;

  Inertia out;
  while (!active.empty()) {
    std::size_t pos = active.size();
    for (std::size_t t = 0; t < active.size(); ++t) {
      if (sgn(a(active[t], active[t]).re) != 0) {
        pos = t;
        break;
      }
    }
    if (pos != active.size()) {
      const std::size_t k = active[pos];
      const mpq_class d = a(k, k).re;
      ++(sgn(d) < 0 ? out.minus : out.plus);
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(pos));
      const GaussianRational inv(1 / d);
      for (std::size_t r : active) {
        if (a(r, k).is_zero()) continue;
        const GaussianRational f = a(r, k) * inv;
        for (std::size_t s : active) a(r, s) -= f * a(k, s);
      }
      continue;
    }

    // Zero diagonal: pivot on a nonzero off-diagonal pair.
    std::size_t pi = active.size(), pj = active.size();
    for (std::size_t t = 0; t < active.size() && pi == active.size(); ++t)
      for (std::size_t u = t + 1; u < active.size(); ++u)
        if (!a(active[t], active[u]).is_zero()) {
          pi = t;
          pj = u;
          break;
        }
    if (pi == active.size()) {
      out.zero += static_cast<int>(active.size());
      break;
    }
    const std::size_t i = active[pi], j = active[pj];
    ++out.minus;
    ++out.plus;
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(pj));
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(pi));
    // Schur complement with B^{-1} = [[0, 1/conj(b)], [1/b, 0]].
    const GaussianRational inv_b = GaussianRational(1) / a(i, j);
    const GaussianRational inv_bc = GaussianRational(1) / a(j, i);
    std::vector<GaussianRational> left_j, left_i;
    for (std::size_t r : active) {
      left_j.push_back(a(r, j) * inv_b);
      left_i.push_back(a(r, i) * inv_bc);
    }
    for (std::size_t t = 0; t < active.size(); ++t)
      for (std::size_t u = 0; u < active.size(); ++u) {
        const std::size_t r = active[t], s = active[u];
        a(r, s) -= left_j[t] * a(i, s) + left_i[t] * a(j, s);
      }
  }
  return out;
}

}  // namespace pti

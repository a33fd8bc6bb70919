#include "pti/inertia.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pti/linalg.hpp"

namespace pti {

std::string Inertia::to_string() const {
  return "(" + std::to_string(minus) + "," + std::to_string(zero) + "," + std::to_string(plus) + ")";
}

std::string Inertia::to_plain() const {
  return std::to_string(minus) + " " + std::to_string(zero) + " " + std::to_string(plus);
}

Inertia Inertia::parse(const std::string& text) {
  std::string cleaned;
  for (char c : text) cleaned += (c == '(' || c == ')' || c == ',') ? ' ' : c;
  std::istringstream in(cleaned);
  Inertia r;
  std::string rest;
  if (!(in >> r.minus >> r.zero >> r.plus) || (in >> rest) || r.minus < 0 || r.zero < 0 || r.plus < 0) {
    throw std::invalid_argument("malformed inertia '" + text + "'");
  }
  return r;
}

InertiaResult classify_eigenvalues(std::span<const double> eigenvalues, double tol_zero) {
  if (!(tol_zero > 0.0)) throw std::invalid_argument("tol_zero must be positive");
  double largest = 0.0;
  for (double v : eigenvalues) largest = std::max(largest, std::fabs(v));
  InertiaResult r;
  r.threshold = tol_zero * std::max(1.0, largest);
  r.eigenvalues.assign(eigenvalues.begin(), eigenvalues.end());
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end());
  for (double v : r.eigenvalues) {
    const double a = std::fabs(v);
    if (a <= r.threshold) {
      ++r.inertia.zero;
    } else {
      if (a <= 10.0 * r.threshold) r.marginal = true;
      ++(v < 0.0 ? r.inertia.minus : r.inertia.plus);
    }
  }
  return r;
}

InertiaResult inertia_of(const ComplexMatrix& m, double tol_zero) {
  return classify_eigenvalues(herm_eigvals(m), tol_zero);
}

}  // namespace pti

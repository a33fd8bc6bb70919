#pragma once

#include "pti/gaussian_rational.hpp"
#include "pti/inertia.hpp"

namespace pti {

/// Inertia of an exactly Hermitian matrix over Q(i), by symmetric Gaussian
/// elimination with 1x1 pivots on nonzero diagonal entries and 2x2 pivots
/// [[0, b], [conj(b), 0]] when the remaining diagonal is all zero. Each step
/// is a congruence, so the counts are exact by Sylvester's law.
/// Throws std::invalid_argument if the matrix is not exactly Hermitian.
Inertia exact_inertia(const RationalComplexMatrix& m);

}  // namespace pti

#pragma once

#include <string>
#include <vector>

#include "pti/inertia.hpp"
#include "pti/states.hpp"

namespace pti {

struct RealizedInertia {
  Inertia inertia;
  std::string witness;  // catalog id or construction
  bool verified = false;
};

struct ExcludedInertia {
  Inertia inertia;
  std::string reason;
};

struct InertiaSetReport {
  BipartiteDims dims;
  std::vector<RealizedInertia> realized;  // sorted, one per inertia
  std::vector<ExcludedInertia> forbidden;
  std::vector<ExcludedInertia> open;
  std::vector<std::string> notes;

  bool all_verified() const;
};

/// Supported: (2,n) for n >= 2 and (3,n) for n >= 3. Every realized entry
/// is rebuilt and re-verified (float and exact) on each call.
InertiaSetReport inertia_table(BipartiteDims dims, double tol_zero = kDefaultTolZero);

}  // namespace pti

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pti/analysis.hpp"
#include "pti/gaussian_rational.hpp"
#include "pti/inertia.hpp"
#include "pti/states.hpp"

namespace pti {

using ParamMap = std::map<std::string, GaussianRational>;

/// weight * |psi><psi| with psi given as exact ket terms. Negative weights
/// are allowed (e.g. removing part of an identity); the total must be PSD.
struct WeightedKet {
  GaussianRational weight;
  std::vector<KetTerm> terms;
};

struct Recipe {
  BipartiteDims dims;
  std::vector<WeightedKet> kets;

  void add(GaussianRational weight, std::vector<KetTerm> terms) { kets.push_back({std::move(weight), std::move(terms)}); }
  void add_basis(GaussianRational weight, std::size_t i, std::size_t j) { add(std::move(weight), {{GaussianRational(1), i, j}}); }
  void add_identity(const GaussianRational& weight);

  RationalComplexMatrix exact() const;
  BipartiteState state() const;  // validated PSD
};

struct ParamSpec {
  std::string name;
  GaussianRational default_value;
};

struct CatalogEntry {
  std::string id;
  BipartiteDims dims;
  std::vector<ParamSpec> params;
  std::function<Recipe(const ParamMap&)> build;
  /// Allowed PT inertias for the given parameters. One element for a fixed
  /// claim; several when only a set of outcomes is asserted.
  std::function<std::vector<Inertia>(const ParamMap&)> expected;
  /// Empty when the parameters are admissible, otherwise the reason.
  std::function<std::string(const ParamMap&)> check;
  std::string description;
  std::string notes;
  /// Realizes one of the thirteen 3x3 arrays as an ordinary entry (not a
  /// printed-variant or family member).
  bool primary_33 = false;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& id);  // throws std::out_of_range

/// Defaults merged with overrides; rejects unknown names and failed checks.
ParamMap resolve_params(const CatalogEntry& e, const ParamMap& overrides);
/// "a=1/2,b=1+j"
ParamMap parse_params(const std::string& text);

BipartiteState build(const std::string& id, const ParamMap& overrides = {});

struct VerifyResult {
  std::string id;
  ParamMap params;
  std::vector<Inertia> expected;
  Inertia computed;
  std::optional<Inertia> exact;
  bool marginal = false;
  bool pass = false;
  std::string detail;

  /// "id=... expected=... float=... exact=... marginal=0|1 result=PASS|FAIL"
  std::string record() const;
};

VerifyResult verify(const std::string& id, const ParamMap& overrides = {}, double tol_zero = kDefaultTolZero);
VerifyResult verify_state(const std::string& label, const BipartiteState& rho, const std::vector<Inertia>& expected,
                          const RationalComplexMatrix* exact_rho, double tol_zero = kDefaultTolZero);

struct Ex11Spectrum {
  std::vector<double> eigenvalues;  // all nine, ascending
  double roots[3] = {0, 0, 0};      // cubic roots, descending
  double product_error = 0.0;       // |x1 x2 x3 - (-1 - |a|^2)|
  double sum_error = 0.0;           // |x1 + x2 + x3 - (1 + |a|^2 + |b|^2)|
  double printed_sum_error = 0.0;   // against 1 - |b|^2
  bool identities_hold = false;     // product and trace identities within 1e-10
};

/// Six constant eigenvalues -1, -1, 1, 1, 1, 1 and the roots of
/// x^3 - (1+|a|^2+|b|^2) x^2 + (|b|^2-1) x + 1 + |a|^2.
Ex11Spectrum ex11_closed_form(cplx a, cplx b);

/// Real roots of x^3 + c2 x^2 + c1 x + c0, descending. Throws unless all three are real.
std::vector<double> real_cubic_roots(double c2, double c1, double c0);

struct FamilyMember {
  Inertia claimed;
  BipartiteState state;
  Inertia computed;
  bool verified = false;
  std::string construction;
};

/// 2 x (k+1) state sum_{i<k} P(|0,i> + (i+1)|1,i+1>), PT inertia (k, 0, k+2).
Recipe lemma3n_seed(std::size_t k);

/// The (n-1)(2n-1) members (k, 3n-2-2k-j, k+2+j) on 3 x n.
std::vector<FamilyMember> lemma3n_family(std::size_t n, double tol_zero = kDefaultTolZero);

struct Table1Edge {
  Inertia target;
  Inertia computed;
  bool verified = false;
  std::string construction;
};

struct Table1Group {
  Inertia seed;
  std::string seed_id;
  Inertia seed_computed;
  std::vector<Table1Edge> edges;
};

std::vector<Table1Group> table1_report(double tol_zero = kDefaultTolZero);

}  // namespace pti

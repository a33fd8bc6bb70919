#include "pti/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pti/exact_inertia.hpp"
#include "pti/linalg.hpp"

namespace pti {

void Recipe::add_identity(const GaussianRational& weight) {
  for (std::size_t i = 0; i < dims.m; ++i)
    for (std::size_t j = 0; j < dims.n; ++j) add_basis(weight, i, j);
}

RationalComplexMatrix Recipe::exact() const {
  const std::size_t d = dims.total();
  RationalComplexMatrix out(d);
  for (const WeightedKet& k : kets) {
    std::vector<GaussianRational> amp(d);
    for (const KetTerm& t : k.terms) {
      if (t.i >= dims.m || t.j >= dims.n) throw std::invalid_argument("recipe ket index outside dims " + dims.to_string());
      amp[dims.index(t.i, t.j)] += t.coefficient;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (amp[r].is_zero()) continue;
      const GaussianRational wr = k.weight * amp[r];
      for (std::size_t c = 0; c < d; ++c)
        if (!amp[c].is_zero()) out(r, c) += wr * amp[c].conj();
    }
  }
  return out;
}

BipartiteState Recipe::state() const { return BipartiteState::make(dims, exact().to_double()); }

namespace {

using GR = GaussianRational;

KetTerm T(GR c, std::size_t i, std::size_t j) { return {std::move(c), i, j}; }
std::vector<KetTerm> ket(const std::string& text) { return parse_ket_terms(text); }
GR q(long num, long den = 1) { return GR(mpq_class(num, den)); }

std::vector<Inertia> one(Inertia i) { return {i}; }

std::function<std::vector<Inertia>(const ParamMap&)> fixed(Inertia i) {
  return [i](const ParamMap&) { return one(i); };
}

std::string no_check(const ParamMap&) { return {}; }

// Rank-two states alpha + beta on 3x3.
Recipe pair(std::vector<KetTerm> alpha, std::vector<KetTerm> beta) {
  Recipe r{{3, 3}, {}};
  r.add(GR(1), std::move(alpha));
  r.add(GR(1), std::move(beta));
  return r;
}

const char* kPhi2 = "|0,0> + |1,1>";
const char* kPhi3 = "|0,0> + |1,1> + |2,2>";

// (2,0,4) seed on 2x3: (|00>+|11>+|12>)P + (|00>+2|01>+2|11>)P.
Recipe seed_204() {
  Recipe r{{2, 3}, {}};
  r.add(GR(1), ket("|0,0> + |1,1> + |1,2>"));
  r.add(GR(1), ket("|0,0> + 2|0,1> + 2|1,1>"));
  return r;
}

// The 2x3 recipe placed in the corner of 3x3 plus 1/10 |2,j><2,j| for j < l.
Recipe seed_204_embedded(std::size_t l) {
  Recipe r = seed_204();
  r.dims = {3, 3};
  for (std::size_t j = 0; j < l; ++j) r.add_basis(q(1, 10), 2, j);
  return r;
}

Recipe arr13_xiii() {
  Recipe r{{3, 3}, {}};
  r.add(GR(1), ket("|0,0> + 1/4|1,1> + |2,2>"));
  r.add(GR(1), ket("|0,1> + 1/3|1,2> + 1/3|2,0>"));
  r.add(GR(1), ket("|0,2> + 1/2|1,0> + |2,1>"));
  return r;
}

Recipe phi2_plus_identity(std::vector<std::pair<std::size_t, std::size_t>> removed, bool literal_iv = false) {
  Recipe r{{3, 3}, {}};
  r.add(GR(1), ket(kPhi2));
  r.add_identity(q(1, 10));
  for (std::size_t k = 0; k < removed.size(); ++k) {
    const bool flip = literal_iv && k == 2;
    r.add_basis(flip ? q(1, 10) : q(-1, 10), removed[k].first, removed[k].second);
  }
  return r;
}

const GR& P(const ParamMap& p, const std::string& name) { return p.at(name); }

std::string nonzero(const ParamMap& p, std::initializer_list<const char*> names, const std::string& why) {
  for (const char* n : names)
    if (P(p, n).is_zero()) return std::string(n) + " must be nonzero (" + why + ")";
  return {};
}

std::vector<CatalogEntry> make_catalog() {
  std::vector<CatalogEntry> c;
  auto add = [&](CatalogEntry e) { c.push_back(std::move(e)); };

  add({"ex11", {3, 3}, {{"a", GR(1)}, {"b", GR(1)}},
       [](const ParamMap& p) {
         return pair(ket(kPhi3), {T(P(p, "a"), 0, 0), T(P(p, "b"), 0, 1)});
       },
       fixed({3, 0, 6}), no_check,
       "(|00>+|11>+|22>)P + (|0>(a|0>+b|1>))P; closed-form spectrum -1,-1,1,1,1,1 plus cubic roots", "", false});

  add({"npt2_i", {3, 3}, {},
       [](const ParamMap&) { return pair(ket(kPhi2), ket("|2,2>")); },
       fixed({1, 4, 4}), no_check, "Schmidt ranks (2,1): alpha=|00>+|11>, beta=|2,2>", "", false});

  add({"npt2_iia", {3, 3}, {{"a", GR(1)}, {"b", GR(1)}},
       [](const ParamMap& p) {
         return pair(ket(kPhi2), {T(P(p, "a"), 0, 0), T(P(p, "b"), 0, 1), T(GR(1), 2, 2)});
       },
       fixed({2, 2, 5}),
       [](const ParamMap& p) -> std::string {
         if (P(p, "a").is_zero() && P(p, "b").is_zero()) return "a and b cannot both vanish (beta needs Schmidt rank 2)";
         return {};
       },
       "Schmidt ranks (2,2): alpha=|00>+|11>, beta=|0>(a|0>+b|1>)+|2,2>", "", false});

  add({"npt2_iib", {3, 3}, {{"a", GR(1)}, {"b", GR(1)}},
       [](const ParamMap& p) {
         return pair(ket(kPhi2), {T(GR(1), 0, 2), T(P(p, "a"), 2, 0), T(P(p, "b"), 2, 1)});
       },
       fixed({2, 2, 5}),
       [](const ParamMap& p) -> std::string {
         if (P(p, "a").is_zero() && P(p, "b").is_zero()) return "a and b cannot both vanish (beta needs Schmidt rank 2)";
         return {};
       },
       "Schmidt ranks (2,2): alpha=|00>+|11>, beta=|0,2>+|2>(a|0>+b|1>)", "", false});

  add({"npt2_iii", {3, 3}, {{"a", GR(1)}, {"b", GR(1)}},
       [](const ParamMap& p) {
         return pair(ket(kPhi3), {T(P(p, "a"), 0, 0), T(P(p, "b"), 0, 1)});
       },
       fixed({3, 0, 6}),
       [](const ParamMap& p) -> std::string {
         if (P(p, "a").is_zero() && P(p, "b").is_zero()) return "a and b cannot both vanish";
         return {};
       },
       "Schmidt ranks (3,1): alpha=|00>+|11>+|22>, beta=|0>(a|0>+b|1>)", "", false});

  add({"npt2_iva", {3, 3}, {{"a", q(1, 2)}, {"b", q(1, 2)}},
       [](const ParamMap& p) {
         return pair(ket(kPhi3), {T(P(p, "a"), 0, 0), T(P(p, "b"), 0, 1), T(GR(1), 1, 0)});
       },
       [](const ParamMap& p) {
         // Claimed rule: sign of |b|^2 - |a b* - a*|^2 - 1.
         const GR& a = P(p, "a");
         const GR& b = P(p, "b");
         const mpq_class d = b.norm() - (a * b.conj() - a.conj()).norm() - 1;
         if (sgn(d) < 0) return one({3, 0, 6});
         if (sgn(d) == 0) return one({2, 1, 6});
         return one({2, 0, 7});
       },
       [](const ParamMap& p) { return nonzero(p, {"b"}, "beta needs Schmidt rank 2"); },
       "Schmidt ranks (3,2): alpha=|00>+|11>+|22>, beta=|0>(a|0>+b|1>)+|1,0>; claimed (3,0,6)/(2,1,6)/(2,0,7) "
       "for |b|^2-|ab*-a*|^2-1 negative/zero/positive",
       "Exact elimination leaves a trace-zero 2x2 block [[1-|b|^2, ab*-a*],[conj, |b|^2-1]], so the family only "
       "reaches (3,0,6), or (2,2,5) when |b|=1 and ab*=a*. The claimed zero/positive regimes fail verification.",
       false});

  add({"npt2_ivb", {3, 3}, {{"a", GR(1)}, {"c", GR(1)}},
       [](const ParamMap& p) {
         return pair(ket(kPhi3), {T(P(p, "a"), 0, 0), T(P(p, "c"), 0, 2), T(GR(1), 1, 0)});
       },
       fixed({3, 0, 6}), [](const ParamMap& p) { return nonzero(p, {"c"}, "c = 0 reduces to Schmidt rank 1"); },
       "Schmidt ranks (3,2): alpha=|00>+|11>+|22>, beta=|0>(a|0>+c|2>)+|1,0>", "", false});

  add({"npt2_ivc", {3, 3}, {{"a", GR(1)}, {"b", GR(1)}, {"e", GR(1)}},
       [](const ParamMap& p) {
         return pair(ket(kPhi3), {T(P(p, "a"), 0, 0), T(P(p, "b"), 0, 1), T(P(p, "e"), 1, 1)});
       },
       [](const ParamMap& p) {
         const GR t = GR(1) + P(p, "a") * P(p, "e").conj();
         if (!t.is_zero()) return one({3, 0, 6});
         return std::vector<Inertia>{{3, 1, 5}, {2, 2, 5}, {2, 1, 6}};
       },
       [](const ParamMap& p) { return nonzero(p, {"a", "e"}, "beta needs Schmidt rank 2"); },
       "Schmidt ranks (3,2): alpha=|00>+|11>+|22>, beta=|0>(a|0>+b|1>)+e|1,1>; (3,0,6) when 1+ae* != 0, "
       "otherwise one of (3,1,5), (2,2,5), (2,1,6)",
       "When 1+ae* = 0 the pivot |b|^2-|be|^2/(1+|e|^2)-|ab|^2/(1+|a|^2) is identically zero, so only (2,2,5) occurs.",
       false});

  add({"npt2_ivd", {3, 3}, {{"b", GR(1)}, {"c", GR(1)}, {"e", GR(1)}},
       [](const ParamMap& p) {
         return pair(ket(kPhi3), {T(P(p, "b"), 0, 1), T(P(p, "c"), 0, 2), T(P(p, "e"), 1, 1)});
       },
       fixed({3, 0, 6}), [](const ParamMap& p) { return nonzero(p, {"c", "e"}, "beta needs Schmidt rank 2"); },
       "Schmidt ranks (3,2): alpha=|00>+|11>+|22>, beta=|0>(b|1>+c|2>)+e|1,1>", "", false});

  add({"arr13_i", {3, 3}, {}, [](const ParamMap&) { return phi2_plus_identity({}); }, fixed({1, 0, 8}), no_check,
       "(|00>+|11>)P + I/10", "", true});
  add({"arr13_ii", {3, 3}, {}, [](const ParamMap&) { return phi2_plus_identity({{2, 2}}); }, fixed({1, 1, 7}),
       no_check, "(|00>+|11>)P + I/10 - |22><22|/10", "", true});
  add({"arr13_iii", {3, 3}, {}, [](const ParamMap&) { return phi2_plus_identity({{2, 2}, {2, 1}}); },
       fixed({1, 2, 6}), no_check, "(|00>+|11>)P + I/10 - (|22><22| + |21><21|)/10", "", true});
  add({"arr13_iv", {3, 3}, {}, [](const ParamMap&) { return phi2_plus_identity({{2, 2}, {2, 1}, {2, 0}}); },
       fixed({1, 3, 5}), no_check, "(|00>+|11>)P + I/10 - (|22><22| + |21><21| + |20><20|)/10",
       "Reads the nested sign as removing all three projectors. The literal nesting (+|20><20|) gives (1,2,6); "
       "see arr13_iv_literal.",
       true});
  add({"arr13_iv_literal", {3, 3}, {}, [](const ParamMap&) { return phi2_plus_identity({{2, 2}, {2, 1}, {2, 0}}, true); },
       fixed({1, 2, 6}), no_check, "(|00>+|11>)P + I/10 - (|22><22| + |21><21| - |20><20|)/10, literal sign nesting",
       "", false});
  add({"arr13_v", {3, 3}, {}, [](const ParamMap&) { return pair(ket(kPhi2), ket("|2,2>")); }, fixed({1, 4, 4}),
       no_check, "(|00>+|11>)P + |22><22|", "", true});
  add({"arr13_vi", {3, 3}, {},
       [](const ParamMap&) {
         Recipe r{{3, 3}, {}};
         r.add(GR(1), ket(kPhi2));
         return r;
       },
       fixed({1, 5, 3}), no_check, "(|00>+|11>)P", "", true});
  add({"arr13_vii", {3, 3}, {}, [](const ParamMap&) { return seed_204_embedded(3); }, fixed({2, 0, 7}), no_check,
       "(2,0,4) seed (|00>+|11>+|12>)P + (|00>+2|01>+2|11>)P in the 2x3 corner, plus (|20><20|+|21><21|+|22><22|)/10",
       "The state printed for this array, (|00>+|11>+|22>)P + (|01>+|10>)P, has PT inertia (2,2,5); see "
       "arr13_vii_printed.",
       true});
  add({"arr13_vii_printed", {3, 3}, {},
       [](const ParamMap&) { return pair(ket(kPhi3), ket("|0,1> + |1,0>")); }, fixed({2, 2, 5}), no_check,
       "(|00>+|11>+|22>)P + (|01>+|10>)P as printed; claimed (2,0,7)", "", false});
  add({"arr13_viii", {3, 3}, {}, [](const ParamMap&) { return seed_204_embedded(2); }, fixed({2, 1, 6}), no_check,
       "(2,0,4) seed in the 2x3 corner plus (|20><20|+|21><21|)/10",
       "The state printed for this array, (|00>+|11>+|22>)P + (|00>+|01>+|11>)P, has PT inertia (3,0,6); see "
       "arr13_viii_printed.",
       true});
  add({"arr13_viii_printed", {3, 3}, {},
       [](const ParamMap&) { return pair(ket(kPhi3), ket("|0,0> + |0,1> + |1,1>")); }, fixed({3, 0, 6}), no_check,
       "(|00>+|11>+|22>)P + (|00>+|01>+|11>)P as printed; claimed (2,1,6)", "", false});
  add({"arr13_ix", {3, 3}, {}, [](const ParamMap&) { return pair(ket(kPhi2), ket("|0,0> + |0,1> + |2,2>")); },
       fixed({2, 2, 5}), no_check, "(|00>+|11>)P + (|00>+|01>+|22>)P", "", true});
  add({"arr13_x", {3, 3}, {}, [](const ParamMap&) { return seed_204_embedded(0); }, fixed({2, 3, 4}), no_check,
       "(2,0,4) seed in the 2x3 corner",
       "Printed as (|01>+|01>)(<12|+<12|), which is not Hermitian; realized by placing the (2,0,4) seed with l = 0.",
       true});
  add({"arr13_xi", {3, 3}, {}, [](const ParamMap&) { return pair(ket(kPhi3), ket("|1,1>")); }, fixed({3, 0, 6}),
       no_check, "(|00>+|11>+|22>)P + |11><11|", "", true});
  add({"arr13_xii", {3, 3}, {},
       [](const ParamMap&) {
         Recipe r = arr13_xiii();
         r.add_basis(q(4, 63), 0, 2);
         return r;
       },
       fixed({3, 1, 5}), no_check, "the (4,0,5) three-ket state plus (4/63)|02><02|",
       "Rank-one update that turns one negative eigenvalue into a zero. The printed state "
       "(|00>+|11>+|22>)P + (|00>+2|01>+2|11>)P has PT inertia (3,0,6); see arr13_xii_printed.",
       true});
  add({"arr13_xii_printed", {3, 3}, {},
       [](const ParamMap&) { return pair(ket(kPhi3), ket("|0,0> + 2|0,1> + 2|1,1>")); }, fixed({3, 0, 6}), no_check,
       "(|00>+|11>+|22>)P + (|00>+2|01>+2|11>)P as printed; claimed (3,1,5)", "", false});
  add({"arr13_xiii", {3, 3}, {}, [](const ParamMap&) { return arr13_xiii(); }, fixed({4, 0, 5}), no_check,
       "(|00>+|11>/4+|22>)P + (|01>+|12>/3+|20>/3)P + (|02>+|10>/2+|21>)P", "", true});

  add({"arr3_xi", {2, 3}, {},
       [](const ParamMap&) {
         Recipe r{{2, 3}, {}};
         r.add(GR(1), ket("|0,0> + |1,1> + |1,2>"));
         r.add_basis(GR(1), 1, 1);
         return r;
       },
       fixed({1, 1, 4}), no_check, "(|00>+|11>+|12>)P + |11><11| on 2x3", "", false});
  add({"arr3_xii", {2, 3}, {}, [](const ParamMap&) { return seed_204(); }, fixed({2, 0, 4}), no_check,
       "(|00>+|11>+|12>)P + (|00>+2|01>+2|11>)P on 2x3",
       "Printed with the bra <2,2|, which does not exist on 2x3; read as <1,2| so both factors match.", false});
  add({"arr3_xiii", {2, 3}, {},
       [](const ParamMap&) {
         Recipe r{{2, 3}, {}};
         r.add(GR(1), ket("|0,0> + 1/4|1,1> + |1,2>"));
         r.add(GR(1), ket("|0,1> + 1/3|1,2> + 1/3|1,0>"));
         r.add(GR(1), ket("|0,2> + 1/2|1,0> + |1,1>"));
         return r;
       },
       fixed({2, 0, 4}), no_check, "three-ket 2x3 state with A-indices folded into {0,1}", "", false});
  add({"seed23_phi2", {2, 3}, {},
       [](const ParamMap&) {
         Recipe r{{2, 3}, {}};
         r.add(GR(1), ket(kPhi2));
         return r;
       },
       fixed({1, 2, 3}), no_check, "(|00>+|11>)P on 2x3", "", false});
  add({"seed23_shift", {2, 3}, {},
       [](const ParamMap&) {
         Recipe r{{2, 3}, {}};
         r.add(GR(1), ket(kPhi2));
         r.add_identity(q(1, 10));
         return r;
       },
       fixed({1, 0, 5}), no_check, "(|00>+|11>)P + I/10 on 2x3", "", false});
  add({"seed22_phi2", {2, 2}, {},
       [](const ParamMap&) {
         Recipe r{{2, 2}, {}};
         r.add(GR(1), ket(kPhi2));
         return r;
       },
       fixed({1, 0, 3}), no_check, "(|00>+|11>)P on 2x2", "", false});
  return c;
}

std::string format_expected(const std::vector<Inertia>& e) {
  std::string s;
  for (std::size_t k = 0; k < e.size(); ++k) s += (k ? "|" : "") + e[k].to_string();
  return s;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = make_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& id) {
  for (const CatalogEntry& e : catalog())
    if (e.id == id) return e;
  throw std::out_of_range("unknown catalog id '" + id + "'");
}

ParamMap resolve_params(const CatalogEntry& e, const ParamMap& overrides) {
  ParamMap p;
  for (const ParamSpec& s : e.params) p[s.name] = s.default_value;
  for (const auto& [name, value] : overrides) {
    if (!p.count(name)) throw std::invalid_argument("entry '" + e.id + "' has no parameter '" + name + "'");
    p[name] = value;
  }
  const std::string problem = e.check(p);
  if (!problem.empty()) throw std::invalid_argument("entry '" + e.id + "': " + problem);
  return p;
}

ParamMap parse_params(const std::string& text) {
  ParamMap p;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("parameter '" + item + "' is not name=value");
    p[item.substr(0, eq)] = GaussianRational::parse(item.substr(eq + 1));
  }
  return p;
}

BipartiteState build(const std::string& id, const ParamMap& overrides) {
  const CatalogEntry& e = catalog_entry(id);
  return e.build(resolve_params(e, overrides)).state();
}

std::string VerifyResult::record() const {
  std::ostringstream s;
  s << "id=" << id;
  if (!params.empty()) {
    s << " params=";
    bool first = true;
    for (const auto& [k, v] : params) {
      s << (first ? "" : ",") << k << "=" << v.to_string();
      first = false;
    }
  }
  s << " expected=" << format_expected(expected) << " float=" << computed.to_string()
    << " exact=" << (exact ? exact->to_string() : std::string("n/a")) << " marginal=" << (marginal ? 1 : 0)
    << " result=" << (pass ? "PASS" : "FAIL");
  if (!detail.empty()) s << " detail=\"" << detail << "\"";
  return s.str();
}

VerifyResult verify_state(const std::string& label, const BipartiteState& rho, const std::vector<Inertia>& expected,
                          const RationalComplexMatrix* exact_rho, double tol_zero) {
  VerifyResult r;
  r.id = label;
  r.expected = expected;
  const InertiaResult f = pt_inertia(rho, tol_zero);
  r.computed = f.inertia;
  r.marginal = f.marginal;
  if (exact_rho) r.exact = exact_inertia(partial_transpose(*exact_rho, rho.dims()));
  const bool in_set = std::find(expected.begin(), expected.end(), r.computed) != expected.end();
  const bool agree = !r.exact || *r.exact == r.computed;
  r.pass = in_set && agree;
  if (!in_set) r.detail = "computed inertia is not among the expected ones";
  else if (!agree) r.detail = "float and exact inertia disagree";
  return r;
}

VerifyResult verify(const std::string& id, const ParamMap& overrides, double tol_zero) {
  const CatalogEntry& e = catalog_entry(id);
  const ParamMap p = resolve_params(e, overrides);
  const Recipe recipe = e.build(p);
  const RationalComplexMatrix exact = recipe.exact();
  VerifyResult r = verify_state(id, recipe.state(), e.expected(p), &exact, tol_zero);
  r.params = p;
  return r;
}

std::vector<double> real_cubic_roots(double c2, double c1, double c0) {
  // Depressed cubic t^3 + p t + q with x = t - c2/3.
  const double shift = c2 / 3.0;
  const double p = c1 - c2 * c2 / 3.0;
  const double qq = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
  if (p >= 0.0) {
    if (p == 0.0 && qq == 0.0) return {-shift, -shift, -shift};
    throw std::domain_error("cubic does not have three real roots");
  }
  const double m = 2.0 * std::sqrt(-p / 3.0);
  double arg = 3.0 * qq / (p * m);
  if (std::fabs(arg) > 1.0 + 1e-12) throw std::domain_error("cubic does not have three real roots");
  arg = std::clamp(arg, -1.0, 1.0);
  const double theta = std::acos(arg) / 3.0;
  std::vector<double> r(3);
  for (int k = 0; k < 3; ++k) r[k] = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift;
  // Newton polish.
  for (double& x : r)
    for (int it = 0; it < 3; ++it) {
      const double f = ((x + c2) * x + c1) * x + c0;
      const double df = (3.0 * x + 2.0 * c2) * x + c1;
      if (df == 0.0) break;
      x -= f / df;
    }
  std::sort(r.begin(), r.end(), std::greater<>());
  return r;
}

Ex11Spectrum ex11_closed_form(cplx a, cplx b) {
  const double na = std::norm(a), nb = std::norm(b);
  const std::vector<double> r = real_cubic_roots(-(1.0 + na + nb), nb - 1.0, 1.0 + na);
  Ex11Spectrum s;
  std::copy(r.begin(), r.end(), s.roots);
  s.eigenvalues = {-1.0, -1.0, 1.0, 1.0, 1.0, 1.0, r[0], r[1], r[2]};
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  const double prod = r[0] * r[1] * r[2], sum = r[0] + r[1] + r[2];
  s.product_error = std::fabs(prod - (-1.0 - na));
  s.sum_error = std::fabs(sum - (1.0 + na + nb));
  s.printed_sum_error = std::fabs(sum - (1.0 - nb));
  const double scale = 1.0 + na + nb;
  s.identities_hold = s.product_error <= 1e-10 * scale * scale && s.sum_error <= 1e-10 * scale;
  return s;
}

Recipe lemma3n_seed(std::size_t k) {
  if (k < 1) throw std::invalid_argument("lemma3n_seed: k >= 1");
  Recipe r{{2, k + 1}, {}};
  for (std::size_t i = 0; i < k; ++i)
    r.add(GR(1), {T(GR(1), 0, i), T(GR(static_cast<long>(i + 1)), 1, i + 1)});
  return r;
}

namespace {

FamilyMember check_member(Inertia claimed, const EmbedResult& e, std::string construction, double tol_zero) {
  FamilyMember m{claimed, e.state, {}, false, std::move(construction)};
  const InertiaResult f = pt_inertia(e.state, tol_zero);
  m.computed = f.inertia;
  const Inertia exact = exact_inertia(partial_transpose(RationalComplexMatrix::from_double(e.state.matrix()), e.state.dims()));
  m.verified = !f.marginal && f.inertia == claimed && exact == claimed;
  return m;
}

}  // namespace

std::vector<FamilyMember> lemma3n_family(std::size_t n, double tol_zero) {
  if (n < 2) throw std::invalid_argument("lemma3n_family: n >= 2");
  std::vector<FamilyMember> out;
  for (std::size_t k = 1; k + 1 <= n; ++k) {
    const BipartiteState seed = lemma3n_seed(k).state();
    const std::size_t span = 3 * n - 2 * k - 2;
    for (std::size_t j = 0; j <= span; ++j) {
      const Inertia claimed{static_cast<int>(k), static_cast<int>(span - j), static_cast<int>(k + 2 + j)};
      const EmbedResult e = embed_plain(seed, 3, n, j, tol_zero);
      out.push_back(check_member(claimed, e,
                                 "2x" + std::to_string(k + 1) + " seed (" + std::to_string(k) + ",0," +
                                     std::to_string(k + 2) + ") placed in 3x" + std::to_string(n) + ", l=" + std::to_string(j),
                                 tol_zero));
    }
  }
  return out;
}

std::vector<Table1Group> table1_report(double tol_zero) {
  std::vector<Table1Group> groups;
  auto seed_group = [&](Inertia seed, const std::string& id) {
    Table1Group g;
    g.seed = seed;
    g.seed_id = id;
    g.seed_computed = verify(id, {}, tol_zero).computed;
    return g;
  };
  auto catalog_edge = [&](Table1Group& g, const std::string& id) {
    const VerifyResult v = verify(id, {}, tol_zero);
    g.edges.push_back({v.expected.front(), v.computed, v.pass && g.seed_computed == g.seed, "catalog entry " + id});
  };
  auto embed_edges = [&](Table1Group& g, std::size_t count) {
    const BipartiteState seed = build(g.seed_id);
    const Inertia s = g.seed_computed;
    for (std::size_t l = 0; l < count; ++l) {
      const Inertia target{s.minus, s.zero + 3 - static_cast<int>(l), s.plus + static_cast<int>(l)};
      const FamilyMember m = check_member(target, embed_plain(seed, 3, 3, l, tol_zero), "", tol_zero);
      g.edges.push_back({target, m.computed, m.verified && g.seed_computed == g.seed,
                         "place " + g.seed_id + " in 3x3, lift " + std::to_string(l) + " basis states"});
    }
  };

  Table1Group a = seed_group({1, 2, 3}, "seed23_phi2");
  embed_edges(a, 6);
  groups.push_back(std::move(a));

  Table1Group b = seed_group({1, 1, 4}, "arr3_xi");
  catalog_edge(b, "arr13_xi");
  groups.push_back(std::move(b));

  Table1Group c = seed_group({2, 0, 4}, "arr3_xii");
  embed_edges(c, 4);
  catalog_edge(c, "arr13_xii");
  catalog_edge(c, "arr13_xiii");
  groups.push_back(std::move(c));
  return groups;
}

}  // namespace pti

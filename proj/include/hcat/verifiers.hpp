#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcat/catalog.hpp"
#include "hcat/derived.hpp"

namespace hcat {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

struct Condition {
  std::string id;
  std::string description;
  Verdict verdict = Verdict::inconclusive;
  std::string detail;
  std::string witness;  // set on failure
};

/// An invertible intertwiner between two modules (re-checkable).
template <class F>
struct ModuleIsoCertificate {
  std::string label;
  LeftModule<F> source, target;
  Matrix<F> map;
};

/// A chain map with a claimed property (re-checkable).
template <class F>
struct ChainMapCertificate {
  std::string label;
  ChainMap<F> map;
  bool quasi_iso = false;
};

template <class F>
struct VerifierReport {
  std::string subject;
  int window = 0;
  std::vector<Condition> conditions;
  std::vector<ModuleIsoCertificate<F>> module_isos;
  std::vector<ChainMapCertificate<F>> chain_maps;
  std::vector<std::pair<std::string, std::string>> facts;

  Verdict overall() const {
    bool inconclusive = false;
    for (const auto& c : conditions) {
      if (c.verdict == Verdict::fail) return Verdict::fail;
      if (c.verdict == Verdict::inconclusive) inconclusive = true;
    }
    return inconclusive ? Verdict::inconclusive : Verdict::pass;
  }
  const Condition* find(const std::string& id) const {
    for (const auto& c : conditions)
      if (c.id == id) return &c;
    return nullptr;
  }
  Condition& add(std::string id, std::string description) {
    conditions.push_back(Condition{std::move(id), std::move(description), Verdict::inconclusive, "", ""});
    return conditions.back();
  }
  void fact(std::string key, std::string value) { facts.emplace_back(std::move(key), std::move(value)); }
};

template <class F>
Verdict verdict_of(const DerivedIso<F>& d) {
  return d.found() ? Verdict::pass : d.absent() ? Verdict::fail : Verdict::inconclusive;
}

template <class F>
void attach_iso(VerifierReport<F>& rep, const std::string& label, const DerivedIso<F>& d) {
  if (d.module_map && d.hx && d.hy) rep.module_isos.push_back({label, *d.hx, *d.hy, *d.module_map});
  if (d.chain_map) rep.chain_maps.push_back({label, *d.chain_map, true});
}

inline std::string dims_string(const std::vector<std::size_t>& v, int lo) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ", ";
    s += "H^" + std::to_string(lo + static_cast<int>(k)) + "=" + std::to_string(v[k]);
  }
  return s.empty() ? "(none)" : s;
}

// ---------------------------------------------------------------------------
// Dualizing complexes.

namespace detail {

/// A -> RHom(R, R) over one side: H^0 is compared with the regular bimodule
/// and the canonical classes y |-> rho(y) eps must form a basis of H^0;
/// all other certified degrees must vanish.
template <class F>
void check_reflexive_side(VerifierReport<F>& rep, Condition& cond, const Complex<F>& r, int w, Contract c,
                          CoverMode mode) {
  const auto& [x, y] = require_factors(r.algebra());
  const Algebra<F>& base = c == Contract::first ? opposite_algebra(y) : opposite_algebra(x);
  auto res = k_projective_resolution(r, w, mode);
  Algebra<F> ra = hom_result_algebra(r.algebra(), r.algebra(), c);
  HomComplex<F> hc(res.resolving, r, c, ra);
  const auto& e = hc.complex();
  auto et = e.trimmed();
  // Hom(P, R) is certified up to lo(R) - lowest(P) - 1 = w - 1
  int top = res.complete ? (et.empty() ? 0 : et.hi()) : std::min(et.empty() ? 0 : et.hi(), w - 1);
  int bottom = et.empty() ? 0 : std::min(0, et.lo());
  std::vector<std::size_t> dims;
  for (int i = bottom; i <= top; ++i) dims.push_back(cohomology(e, i, false).dim());
  rep.fact(cond.id + ".cohomology", dims_string(dims, bottom));
  for (int i = bottom; i <= top; ++i) {
    if (i == 0) continue;
    if (dims[static_cast<std::size_t>(i - bottom)] != 0) {
      cond.verdict = Verdict::fail;
      cond.witness = "H^" + std::to_string(i) + " has dimension " + std::to_string(dims[static_cast<std::size_t>(i - bottom)]);
      return;
    }
  }
  auto h0 = cohomology(e, 0);
  auto regular = regular_bimodule(base).over(ra);
  auto iso = is_isomorphic(h0.module, regular);
  if (!iso.found()) {
    cond.verdict = iso.absent() ? Verdict::fail : Verdict::inconclusive;
    cond.witness = "H^0 is not isomorphic to the regular bimodule: " + iso.reason;
    return;
  }
  rep.module_isos.push_back({cond.id + ": H^0 ~ regular", h0.module, regular, *iso.map});
  // canonical classes
  std::size_t nb = base.dim();
  Matrix<F> canon(r.field(), h0.dim(), nb);
  for (std::size_t b = 0; b < nb; ++b) {
    std::vector<std::pair<int, Matrix<F>>> comps;
    for (int j = r.lo(); j <= r.hi(); ++j) {
      auto side = c == Contract::first ? second_factor_actions(r.module(j)) : first_factor_actions(r.module(j));
      comps.emplace_back(j, side[b] * res.augmentation(j));
    }
    Matrix<F> v = hc.encode(0, comps);
    if (!(e.d(0) * v).is_zero()) {
      cond.verdict = Verdict::fail;
      cond.witness = "canonical class of basis element " + std::to_string(b) + " is not a cocycle";
      return;
    }
    canon.set_block(0, b, h0.extract * v);
  }
  if (rank(canon) != nb || h0.dim() != nb) {
    cond.verdict = Verdict::fail;
    cond.witness = "canonical map to H^0 has rank " + std::to_string(rank(canon)) + " (need " + std::to_string(nb) + ")";
    return;
  }
  cond.verdict = Verdict::pass;
  cond.detail = "H^0 ~ regular bimodule, canonical map bijective; other degrees vanish up to " +
                (res.complete ? std::string("the end of the complex") : "degree " + std::to_string(top));
}

}  // namespace detail

/// Conditions (i)-(iii) for a bounded complex R of A-bimodules.
template <class F>
VerifierReport<F> verify_dualizing(const Complex<F>& r, int w, CoverMode mode = CoverMode::automatic) {
  VerifierReport<F> rep;
  rep.subject = "dualizing test of " + (r.name().empty() ? std::string("R") : r.name());
  rep.window = w;
  auto rt = r.trimmed();
  auto& c1 = rep.add("i", "finitely generated over A and over A^op");
  c1.verdict = Verdict::pass;
  c1.detail = "vacuous: all modules are finite-dimensional";

  auto& c2 = rep.add("ii", "finite injective dimension over A and over A^op");
  auto da = injective_dimension_within(rt.map_modules([](const LeftModule<F>& m) { return restrict_to_first(m); }), w, mode);
  auto db = injective_dimension_within(rt.map_modules([](const LeftModule<F>& m) { return restrict_to_second(m); }), w, mode);
  rep.fact("injdim.A", da.finite() ? std::to_string(*da.value) : "inconclusive(" + std::to_string(w) + ")");
  rep.fact("injdim.Aop", db.finite() ? std::to_string(*db.value) : "inconclusive(" + std::to_string(w) + ")");
  if (da.finite() && db.finite()) {
    c2.verdict = Verdict::pass;
    c2.detail = "top injective degree " + std::to_string(*da.value) + " over A and " + std::to_string(*db.value) +
                " over A^op";
  } else {
    c2.verdict = Verdict::inconclusive;
    c2.detail = "no bounded injective resolution found within window " + std::to_string(w);
  }

  auto& c3a = rep.add("iii.A", "A -> RHom_A(R, R) is an isomorphism");
  detail::check_reflexive_side(rep, c3a, rt, w, Contract::first, mode);
  auto& c3b = rep.add("iii.Aop", "A -> RHom_A^op(R, R) is an isomorphism");
  detail::check_reflexive_side(rep, c3b, rt, w, Contract::second, mode);
  return rep;
}

template <class F>
VerifierReport<F> verify_dualizing(const LeftModule<F>& r, int w, CoverMode mode = CoverMode::automatic) {
  return verify_dualizing(Complex<F>::single(r).with_name(r.name()), w, mode);
}

/// Double-dual reflexivity M ~ RHom_A^op(RHom_A(M, R), R). Each RHom is
/// replaced by its smart truncation at the bound given by the injective
/// dimension of R, so the second step works with exact input.
template <class F>
VerifierReport<F> duality_check(const LeftModule<F>& m, const Complex<F>& r, int w,
                                CoverMode mode = CoverMode::automatic) {
  VerifierReport<F> rep;
  rep.subject = "double dual of " + (m.name().empty() ? std::string("M") : m.name());
  rep.window = w;
  auto& c = rep.add("reflexive", "M ~ RHom(RHom(M, R), R)");
  auto rt = r.trimmed();
  auto da = injective_dimension_within(rt.map_modules([](const LeftModule<F>& x) { return restrict_to_first(x); }), w, mode);
  auto db = injective_dimension_within(rt.map_modules([](const LeftModule<F>& x) { return restrict_to_second(x); }), w, mode);
  if (!da.finite() || !db.finite()) {
    c.detail = "injective dimension of R not bounded within window";
    return rep;
  }
  auto d1 = rhom(exact(as_left_bimodule(m)), exact(rt), w, Route::projective, Contract::first, mode);
  int b1 = *da.value;
  if (!(d1.valid_hi >= b1)) {
    c.detail = "first dual not certified up to degree " + std::to_string(b1);
    return rep;
  }
  auto t1 = truncate_above(d1.complex, b1).trimmed();
  auto d2 = rhom(exact(t1), exact(rt), w, Route::projective, Contract::second, mode);
  int b2 = *db.value - detail::lo_of(t1);
  if (!(d2.valid_hi >= b2)) {
    c.detail = "second dual not certified up to degree " + std::to_string(b2);
    return rep;
  }
  auto t2 = truncate_above(d2.complex, b2).trimmed();
  std::vector<std::size_t> dims;
  int lo = std::min(0, detail::lo_of(t2)), hi = std::max(0, detail::hi_of(t2));
  for (int i = lo; i <= hi; ++i) dims.push_back(cohomology(t2, i, false).dim());
  rep.fact("double_dual.cohomology", dims_string(dims, lo));
  for (int i = lo; i <= hi; ++i)
    if (i != 0 && dims[static_cast<std::size_t>(i - lo)]) {
      c.verdict = Verdict::fail;
      c.witness = "H^" + std::to_string(i) + " of the double dual is nonzero";
      return rep;
    }
  auto h0 = drop_trivial_factors(cohomology(t2, 0).module);
  auto iso = is_isomorphic(h0.over(m.algebra()), m);
  if (iso.found()) {
    c.verdict = Verdict::pass;
    c.detail = "double dual concentrated in degree 0 and isomorphic to M";
    rep.module_isos.push_back({"double dual ~ M", h0.over(m.algebra()), m, *iso.map});
  } else {
    c.verdict = iso.absent() ? Verdict::fail : Verdict::inconclusive;
    c.witness = iso.reason;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Tilting.

/// T (x)^L_B T^v ~ A and T^v (x)^L_A T ~ B, for T over A (x) B^op.
template <class F>
VerifierReport<F> verify_tilting(const DerivedComplex<F>& t, const DerivedComplex<F>& tv, int w,
                                 CoverMode mode = CoverMode::automatic) {
  VerifierReport<F> rep;
  rep.subject = "tilting pair";
  rep.window = w;
  const auto& [a, bop] = require_factors(t.algebra());
  Algebra<F> b = opposite_algebra(bop);
  auto x1 = ltensor(t, tv, w, TensorSide::left, mode);
  auto d1 = derived_isomorphic(x1, exact(regular_bimodule(a).over(x1.algebra())), w, mode);
  auto& c1 = rep.add("T.Tv", "T (x)^L T^v ~ A");
  c1.verdict = verdict_of(d1);
  (c1.verdict == Verdict::pass ? c1.detail : c1.witness) = d1.reason;
  rep.fact("T.Tv.cohomology", dims_string(d1.dims_x, d1.range_lo));
  attach_iso(rep, "T (x)^L T^v ~ A", d1);
  auto x2 = ltensor(tv, t, w, TensorSide::left, mode);
  auto d2 = derived_isomorphic(x2, exact(regular_bimodule(b).over(x2.algebra())), w, mode);
  auto& c2 = rep.add("Tv.T", "T^v (x)^L T ~ B");
  c2.verdict = verdict_of(d2);
  (c2.verdict == Verdict::pass ? c2.detail : c2.witness) = d2.reason;
  rep.fact("Tv.T.cohomology", dims_string(d2.dims_x, d2.range_lo));
  attach_iso(rep, "T^v (x)^L T ~ B", d2);
  return rep;
}

// ---------------------------------------------------------------------------
// Rigidity.

template <class F>
VerifierReport<F> is_rigid(const Complex<F>& m, int w, CoverMode mode = CoverMode::automatic) {
  VerifierReport<F> rep;
  rep.subject = "rigidity of " + (m.name().empty() ? std::string("M") : m.name());
  rep.window = w;
  auto sq = square(m, w, mode);
  auto d = derived_isomorphic(exact(m), sq, w, mode);
  auto& c = rep.add("rho", "M ~ Sq(M)");
  c.verdict = verdict_of(d);
  (c.verdict == Verdict::pass ? c.detail : c.witness) = d.reason;
  rep.fact("M.cohomology", dims_string(d.dims_x, d.range_lo));
  rep.fact("Sq.cohomology", dims_string(d.dims_y, d.range_lo));
  attach_iso(rep, "rho: M ~ Sq(M)", d);
  return rep;
}

// ---------------------------------------------------------------------------
// Regularity.

template <class F>
struct SideRegularity {
  std::optional<int> projective_dimension;
  std::vector<std::size_t> ext_dims;  // dim Ext^i(top, top), i = 0..w-1
  std::optional<std::pair<int, int>> period;  // syzygy indices j < k with Omega^j ~ Omega^k
};

template <class F>
SideRegularity<F> probe_side(const Algebra<F>& a, int w, CoverMode mode) {
  SideRegularity<F> out;
  auto top = catalog::top_module(a);
  auto r = projective_resolution(top, w, mode);
  if (is_projective(top))
    out.projective_dimension = 0;
  else if (r.complete)
    out.projective_dimension = r.length();
  HomComplex<F> hc(r.resolving, Complex<F>::single(top), Contract::plain);
  for (int i = 0; i < w; ++i) out.ext_dims.push_back(cohomology(hc.complex(), i, false).dim());
  const auto& s = r.syzygies;
  for (std::size_t k = 1; k < s.size() && !out.period; ++k)
    for (std::size_t j = 0; j < k && !out.period; ++j)
      if (s[j].module.dim() == s[k].module.dim() && is_isomorphic(s[j].module, s[k].module).found())
        out.period = std::make_pair(static_cast<int>(j + 1), static_cast<int>(k + 1));
  return out;
}

/// Ext between simple modules (through the top A/rad A) over A and A^op.
/// A bound d is reported when the resolutions of the tops close.
template <class F>
VerifierReport<F> regularity_probe(const Algebra<F>& a, int w, CoverMode mode = CoverMode::automatic) {
  VerifierReport<F> rep;
  rep.subject = "regularity of " + a.name();
  rep.window = w;
  auto left = probe_side(a, w, mode);
  auto right = probe_side(opposite_algebra(a), w, mode);
  auto describe = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  rep.fact("ext.A", describe(left.ext_dims));
  rep.fact("ext.Aop", describe(right.ext_dims));
  auto& c = rep.add("regular", "Ext^i between simples vanishes for i > d on both sides");
  if (left.projective_dimension && right.projective_dimension) {
    int d = std::max(*left.projective_dimension, *right.projective_dimension);
    int largest = -1;
    for (std::size_t i = 0; i < left.ext_dims.size(); ++i)
      if (left.ext_dims[i] || right.ext_dims[i]) largest = static_cast<int>(i);
    c.verdict = Verdict::pass;
    c.detail = "regular with d = " + std::to_string(d) + " (resolutions of the tops close; largest nonvanishing Ext degree " +
               std::to_string(largest) + ")";
    rep.fact("d", std::to_string(d));
  } else {
    c.verdict = Verdict::inconclusive;
    c.detail = "no vanishing bound within window " + std::to_string(w);
    for (const auto* side : {&left, &right})
      if (side->period) {
        c.detail += "; syzygies repeat (Omega^" + std::to_string(side->period->first) + " ~ Omega^" +
                    std::to_string(side->period->second) + ")";
        break;
      }
    rep.fact("d", "none");
  }
  return rep;
}

}  // namespace hcat

#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hcat/resolution.hpp"

namespace hcat {

inline constexpr int kNegInf = INT_MIN / 4;
inline constexpr int kPosInf = INT_MAX / 4;

inline int saturate(long long v) {
  return static_cast<int>(std::clamp<long long>(v, kNegInf, kPosInf));
}

/// A computed complex standing for an object of the derived category. Its
/// cohomology is certified (equal to that of the true object) in degrees
/// [valid_lo, valid_hi]; outside that range nothing is claimed.
template <class F>
struct DerivedComplex {
  Complex<F> complex;
  int valid_lo = kNegInf;
  int valid_hi = kPosInf;
  int window = 0;

  static DerivedComplex exact(const Complex<F>& c) { return DerivedComplex{c, kNegInf, kPosInf, 0}; }

  const Algebra<F>& algebra() const { return complex.algebra(); }
  bool is_exact() const { return valid_lo <= kNegInf && valid_hi >= kPosInf; }
  bool valid_in(int i) const { return i >= valid_lo && i <= valid_hi; }
  bool certifies_nothing() const { return valid_lo > valid_hi; }

  /// Certified degrees intersected with the support of the computed complex.
  std::pair<int, int> checked_range() const {
    auto t = complex.trimmed();
    if (t.empty()) return {std::max(valid_lo, 0), std::min(valid_hi, -1)};
    return {std::max(valid_lo, t.lo()), std::min(valid_hi, t.hi())};
  }
  /// Every degree where the computed complex lives is certified.
  bool covers_support() const {
    auto t = complex.trimmed();
    if (t.empty()) return is_exact();
    return valid_lo <= t.lo() && valid_hi >= t.hi();
  }
  std::string window_statement() const {
    if (is_exact()) return "exact in all degrees";
    if (certifies_nothing()) return "no degree certified";
    std::string lo = valid_lo <= kNegInf ? "-inf" : std::to_string(valid_lo);
    std::string hi = valid_hi >= kPosInf ? "+inf" : std::to_string(valid_hi);
    return "certified in degrees [" + lo + ", " + hi + "]";
  }
};

template <class F>
DerivedComplex<F> exact(const Complex<F>& c) {
  return DerivedComplex<F>::exact(c);
}

template <class F>
DerivedComplex<F> exact(const LeftModule<F>& m, int degree = 0) {
  return DerivedComplex<F>::exact(Complex<F>::single(m, degree));
}

namespace detail {

template <class F>
int lo_of(const Complex<F>& c) {
  return c.empty() ? 0 : c.lo();
}
template <class F>
int hi_of(const Complex<F>& c) {
  return c.empty() ? 0 : c.hi();
}

}  // namespace detail

enum class Route { projective, injective };

inline const char* to_string(Route r) { return r == Route::projective ? "projective" : "injective"; }

/// RHom(M, N). Projective route: Hom(P, N) for a resolution P of M over its
/// full algebra. Injective route: Hom(M, I) for the duality-built injective
/// resolution of N. With a truncated resolution the result is certified up to
/// lo(N) - lo(M) + w - 1 (projective) or hi(N) - hi(M) + w - 1 (injective).
template <class F>
DerivedComplex<F> rhom(const DerivedComplex<F>& m, const DerivedComplex<F>& n, int w, Route route = Route::projective,
                       Contract c = Contract::plain, CoverMode mode = CoverMode::automatic) {
  using detail::hi_of;
  using detail::lo_of;
  Algebra<F> ra = hom_result_algebra(m.algebra(), n.algebra(), c);
  Complex<F> mt = m.complex.trimmed(), nt = n.complex.trimmed();
  DerivedComplex<F> out;
  out.window = w;
  bool inputs_exact = m.is_exact() && n.is_exact();
  if (route == Route::injective && !inputs_exact)
    throw Error("rhom: the injective route needs arguments certified in all degrees");
  if (route == Route::projective) {
    auto r = k_projective_resolution(mt, w, mode);
    out.complex = HomComplex<F>(r.resolving, nt, c, ra).complex();
    out.valid_lo = kNegInf;
    out.valid_hi = r.complete ? kPosInf : saturate(1LL * lo_of(nt) - (lo_of(mt) - w) - 1);
    if (!inputs_exact) {
      auto p = r.resolving.trimmed();
      if (n.valid_lo > kNegInf) {
        // errors of N sit in degrees <= valid_lo - 1; they reach degrees <= valid_lo - 1 - lowest(P)
        if (r.complete)
          out.valid_lo = std::max(out.valid_lo, saturate(1LL * n.valid_lo - lo_of(p) + 1));
        else
          out.valid_lo = kPosInf;
      }
      if (n.valid_hi < kPosInf) out.valid_hi = std::min(out.valid_hi, saturate(1LL * n.valid_hi - hi_of(mt) - 1));
      if (m.valid_lo > kNegInf) out.valid_hi = std::min(out.valid_hi, saturate(1LL * lo_of(nt) - m.valid_lo - 1));
      if (m.valid_hi < kPosInf) {
        out.valid_lo = kPosInf;
        out.valid_hi = kNegInf;
      }
    }
  } else {
    auto ir = injective_resolution(nt, w, mode);
    out.complex = HomComplex<F>(mt, ir.resolving, c, ra).complex();
    out.valid_hi = ir.complete ? kPosInf : saturate(1LL * hi_of(nt) + w - hi_of(mt) - 1);
  }
  return out;
}

template <class F>
DerivedComplex<F> rhom(const Complex<F>& m, const Complex<F>& n, int w, Route route = Route::projective,
                       Contract c = Contract::plain, CoverMode mode = CoverMode::automatic) {
  return rhom(exact(m), exact(n), w, route, c, mode);
}

enum class TensorSide { left, right };

/// M (x)^L_B N for M over X (x) B^op and N over B (x) W, by resolving one
/// argument over its full algebra (free there, hence flat over B).
template <class F>
DerivedComplex<F> ltensor(const DerivedComplex<F>& m, const DerivedComplex<F>& n, int w,
                          TensorSide side = TensorSide::left, CoverMode mode = CoverMode::automatic) {
  using detail::hi_of;
  using detail::lo_of;
  Complex<F> mt = m.complex.trimmed(), nt = n.complex.trimmed();
  DerivedComplex<F> out;
  out.window = w;
  if (side == TensorSide::left) {
    auto r = k_projective_resolution(mt, w, mode);
    out.complex = tensor_complex(r.resolving, nt);
    out.valid_lo = r.complete ? kNegInf : saturate(1LL * lo_of(mt) - w + hi_of(nt) + 1);
  } else {
    auto r = k_projective_resolution(nt, w, mode);
    out.complex = tensor_complex(mt, r.resolving);
    out.valid_lo = r.complete ? kNegInf : saturate(1LL * lo_of(nt) - w + hi_of(mt) + 1);
  }
  out.valid_hi = kPosInf;
  if (m.valid_lo > kNegInf) out.valid_lo = std::max(out.valid_lo, saturate(1LL * m.valid_lo + hi_of(nt) + 1));
  if (n.valid_lo > kNegInf) out.valid_lo = std::max(out.valid_lo, saturate(1LL * n.valid_lo + hi_of(mt) + 1));
  if (m.valid_hi < kPosInf || n.valid_hi < kPosInf) {
    out.valid_lo = kPosInf;
    out.valid_hi = kNegInf;
  }
  return out;
}

template <class F>
DerivedComplex<F> ltensor(const Complex<F>& m, const Complex<F>& n, int w, TensorSide side = TensorSide::left,
                          CoverMode mode = CoverMode::automatic) {
  return ltensor(exact(m), exact(n), w, side, mode);
}

/// Certified cohomology dimension of a derived complex in degree i.
template <class F>
std::size_t certified_dim(const DerivedComplex<F>& x, int i) {
  if (!x.valid_in(i))
    throw WindowShortfall("degree " + std::to_string(i) + " is outside the certified range (" + x.window_statement() +
                          ")");
  return cohomology(x.complex, i, false).dim();
}

/// dim Ext^i(M, N), computed by both routes; a disagreement is an internal error.
template <class F>
std::size_t ext(const LeftModule<F>& m, const LeftModule<F>& n, int i, int w, CoverMode mode = CoverMode::automatic) {
  if (i > w - 1) throw WindowShortfall("ext degree " + std::to_string(i) + " needs window > " + std::to_string(i));
  if (i < 0) return 0;
  auto cm = Complex<F>::single(m), cn = Complex<F>::single(n);
  std::size_t a = certified_dim(rhom(cm, cn, w, Route::projective, Contract::plain, mode), i);
  std::size_t b = certified_dim(rhom(cm, cn, w, Route::injective, Contract::plain, mode), i);
  if (a != b)
    throw InvariantViolation("ext: projective and injective routes disagree in degree " + std::to_string(i) + " (" +
                             std::to_string(a) + " vs " + std::to_string(b) + ")");
  return a;
}

/// Hom_D(M, N) = H^0 RHom(M, N), with chain-map representatives P -> N.
template <class F>
struct DerivedHom {
  Resolution<F> resolution;  // P -> M
  std::size_t dim = 0;
  std::vector<ChainMap<F>> basis;  // representatives of a basis of H^0
  bool certified = false;
};

template <class F>
DerivedHom<F> derived_hom(const Complex<F>& m, const Complex<F>& n, int w, CoverMode mode = CoverMode::automatic) {
  DerivedHom<F> out;
  out.resolution = k_projective_resolution(m.trimmed(), w, mode);
  HomComplex<F> hc(out.resolution.resolving, n.trimmed(), Contract::plain);
  auto h = cohomology(hc.complex(), 0, false);
  out.dim = h.dim();
  for (std::size_t b = 0; b < h.dim(); ++b) out.basis.push_back(hc.as_chain_map(0, h.section.col(b)));
  int valid_hi = out.resolution.complete ? kPosInf
                                         : detail::lo_of(n.trimmed()) - (detail::lo_of(m.trimmed()) - w) - 1;
  out.certified = valid_hi >= 0;
  return out;
}

// ---------------------------------------------------------------------------
// Triangles from short exact sequences.

template <class F>
struct Triangle {
  ChainMap<F> alpha;       // L -> M
  ChainMap<F> beta;        // M -> N
  Cone<F> cone;            // of alpha
  ChainMap<F> comparison;  // cone(alpha) -> N, a quasi-isomorphism
  Resolution<F> resolution;  // P -> N
  ChainMap<F> lift;        // P -> cone(alpha)
  ChainMap<F> gamma;       // P -> L[1], the connecting morphism

  const Complex<F>& l() const { return alpha.source(); }
  const Complex<F>& m() const { return alpha.target(); }
  const Complex<F>& n() const { return beta.target(); }
};

/// L -a-> M -b-> N -g-> L[1] for a degreewise short exact sequence. g is the
/// composite of the projection cone(a) -> L[1] with a lift of P -> N along
/// the quasi-isomorphism cone(a) -> N.
template <class F>
Triangle<F> ses_to_triangle(const ChainMap<F>& alpha, const ChainMap<F>& beta, int w,
                            CoverMode mode = CoverMode::automatic) {
  const auto& l = alpha.source();
  const auto& m = alpha.target();
  const auto& n = beta.target();
  const F& f = m.field();
  int lo = std::min({detail::lo_of(l), detail::lo_of(m), detail::lo_of(n)});
  int hi = std::max({detail::hi_of(l), detail::hi_of(m), detail::hi_of(n)});
  for (int i = lo; i <= hi; ++i) {
    if (!(beta(i) * alpha(i)).is_zero()) throw InvariantViolation("ses: b a != 0 in degree " + std::to_string(i));
    if (rank(alpha(i)) != l.dim(i) || rank(beta(i)) != n.dim(i) || l.dim(i) + n.dim(i) != m.dim(i))
      throw InvariantViolation("ses: not exact in degree " + std::to_string(i));
  }
  Triangle<F> t;
  t.alpha = alpha;
  t.beta = beta;
  t.cone = cone(alpha);
  const auto& c = t.cone.complex;
  std::vector<Matrix<F>> comps;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    Matrix<F> q(f, n.dim(i), c.dim(i));
    q.set_block(0, l.dim(i + 1), beta(i));
    comps.push_back(std::move(q));
  }
  t.comparison = ChainMap<F>::make(c, n, std::move(comps), c.lo());
  t.resolution = k_projective_resolution(n, w, mode);
  auto lifted = lift_chain_map(t.resolution.augmentation, t.comparison);
  if (!lifted) throw InvariantViolation("ses: no lift along cone(a) -> N");
  t.lift = *lifted;
  t.gamma = compose(t.cone.projection, t.lift);
  return t;
}

/// Exactness of the long exact sequence
/// H^q(L) -> H^q(M) -> H^q(N) -> H^(q+1)(L) at every joint in degrees [lo, hi].
struct LesCheck {
  bool exact = true;
  std::string failure;
};

template <class F>
LesCheck check_long_exact_sequence(const Triangle<F>& t, int lo, int hi) {
  LesCheck out;
  const auto& p = t.resolution.resolving;
  auto fail = [&](const std::string& why) {
    if (out.exact) out.failure = why;
    out.exact = false;
  };
  for (int q = lo; q <= hi; ++q) {
    if (!t.resolution.valid_in(q)) continue;
    auto hl = cohomology(t.l(), q, false), hm = cohomology(t.m(), q, false), hn = cohomology(t.n(), q, false);
    auto hl1 = cohomology(t.l(), q + 1, false), hm1 = cohomology(t.m(), q + 1, false);
    auto hp = cohomology(p, q, false);
    Matrix<F> a = induced_map(t.alpha, q, hl, hm);
    Matrix<F> b = induced_map(t.beta, q, hm, hn);
    Matrix<F> a1 = induced_map(t.alpha, q + 1, hl1, hm1);
    // H^q(P) ~ H^q(N) through the augmentation; g on H^q(N) is g_P e^{-1}
    Matrix<F> e = induced_map(t.resolution.augmentation, q, hp, hn);
    auto einv = inverse(e);
    if (!einv) {
      fail("augmentation not invertible on H^" + std::to_string(q));
      continue;
    }
    Matrix<F> g = hl1.extract * t.gamma(q) * hp.section * *einv;
    auto joint = [&](const Matrix<F>& in, const Matrix<F>& outm, std::size_t d, const std::string& where) {
      if (d == 0) return;
      if (!(outm * in).is_zero()) fail("composite nonzero at " + where);
      if (rank(in) + rank(outm) != d) fail("image != kernel at " + where);
    };
    joint(a, b, hm.dim(), "H^" + std::to_string(q) + "(M)");
    joint(b, g, hn.dim(), "H^" + std::to_string(q) + "(N)");
    joint(g, a1, hl1.dim(), "H^" + std::to_string(q + 1) + "(L)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism in the derived category.

template <class F>
struct DerivedIso {
  enum class Status { found, absent, inconclusive } status = Status::inconclusive;
  std::string reason;
  std::optional<int> degree;               // when both sides are concentrated in one degree
  std::optional<LeftModule<F>> hx, hy;     // H^degree of both sides
  std::optional<Matrix<F>> module_map;     // hx -> hy, invertible intertwiner
  std::optional<ChainMap<F>> chain_map;    // P_X -> Y, a quasi-isomorphism
  std::vector<std::size_t> dims_x, dims_y;
  int range_lo = 0, range_hi = -1;

  bool found() const { return status == Status::found; }
  bool absent() const { return status == Status::absent; }
};

/// Decides X ~ Y: compares certified cohomology dimensions, then either
/// compares the single nonzero cohomology modules (formal case) or searches
/// H^0 Hom(P_X, Y) for a quasi-isomorphism.
template <class F>
DerivedIso<F> derived_isomorphic(const DerivedComplex<F>& x, const DerivedComplex<F>& y, int w,
                                 CoverMode mode = CoverMode::automatic, std::size_t tries = 24) {
  using S = typename DerivedIso<F>::Status;
  DerivedIso<F> out;
  if (!(x.algebra() == y.algebra())) throw AlgebraMismatch("derived_isomorphic: different algebras");
  auto xt = x.complex.trimmed(), yt = y.complex.trimmed();
  int slo = std::min(xt.empty() ? kPosInf : xt.lo(), yt.empty() ? kPosInf : yt.lo());
  int shi = std::max(xt.empty() ? kNegInf : xt.hi(), yt.empty() ? kNegInf : yt.hi());
  if (slo > shi) {
    bool full = x.is_exact() && y.is_exact();
    out.status = full ? S::found : S::inconclusive;
    out.reason = full ? "both complexes are zero" : "zero complexes with partial certification";
    return out;
  }
  int a = std::max({slo, x.valid_lo, y.valid_lo}), b = std::min({shi, x.valid_hi, y.valid_hi});
  out.range_lo = a;
  out.range_hi = b;
  std::vector<int> support;
  for (int i = a; i <= b; ++i) {
    std::size_t dx = cohomology(x.complex, i, false).dim(), dy = cohomology(y.complex, i, false).dim();
    out.dims_x.push_back(dx);
    out.dims_y.push_back(dy);
    if (dx != dy) {
      out.status = S::absent;
      out.reason = "H^" + std::to_string(i) + " dimensions differ (" + std::to_string(dx) + " vs " +
                   std::to_string(dy) + ")";
      return out;
    }
    if (dx) support.push_back(i);
  }
  bool full = a <= slo && b >= shi;
  if (!full) {
    out.status = S::inconclusive;
    out.reason = "certified range [" + std::to_string(a) + ", " + std::to_string(b) + "] misses part of the support [" +
                 std::to_string(slo) + ", " + std::to_string(shi) + "]";
    return out;
  }
  if (support.empty()) {
    out.status = S::found;
    out.reason = "both sides acyclic";
    return out;
  }
  if (support.size() == 1) {
    int d = support.front();
    out.degree = d;
    out.hx = cohomology(x.complex, d).module;
    out.hy = cohomology(y.complex, d).module;
    auto iso = is_isomorphic(*out.hx, *out.hy, tries);
    out.module_map = iso.map;
    out.status = iso.found() ? S::found : iso.absent() ? S::absent : S::inconclusive;
    out.reason = "concentrated in degree " + std::to_string(d) + ": " + iso.reason;
    return out;
  }
  // several degrees: look for a quasi-isomorphism P_X -> Y
  auto r = k_projective_resolution(xt, w, mode);
  if (!r.complete && r.valid_from > a) {
    out.status = S::inconclusive;
    out.reason = "resolution of the source is not certified down to degree " + std::to_string(a);
    return out;
  }
  HomComplex<F> hc(r.resolving, yt, Contract::plain);
  auto h0 = cohomology(hc.complex(), 0, false);
  auto is_qiso = [&](const ChainMap<F>& phi) {
    for (int i = a; i <= b; ++i) {
      auto hs = cohomology(phi.source(), i, false), ht = cohomology(phi.target(), i, false);
      if (hs.dim() != ht.dim()) return false;
      if (hs.dim() && !is_invertible(induced_map(phi, i, hs, ht))) return false;
    }
    return true;
  };
  std::mt19937_64 rng(kSearchSeed);
  std::uniform_int_distribution<long long> coef(-50, 50);
  const F& f = x.complex.field();
  for (std::size_t t = 0; t < h0.dim() + tries; ++t) {
    Matrix<F> v(f, h0.dim(), 1);
    if (t < h0.dim())
      v(t, 0) = f.one();
    else
      for (std::size_t k = 0; k < h0.dim(); ++k) v(k, 0) = f.from_int(coef(rng));
    auto phi = hc.as_chain_map(0, h0.section * v);
    if (is_qiso(phi)) {
      out.status = S::found;
      out.chain_map = phi;
      out.reason = "quasi-isomorphism from the resolution of the source";
      return out;
    }
  }
  out.status = S::inconclusive;
  out.reason = "no quasi-isomorphism among the tried classes of H^0 Hom(P_X, Y)";
  return out;
}

template <class F>
DerivedIso<F> derived_isomorphic(const Complex<F>& x, const Complex<F>& y, int w) {
  return derived_isomorphic(exact(x), exact(y), w);
}

// ---------------------------------------------------------------------------
// Two-sided tilting complexes.

/// T^v = RHom_A(T, A) for T over A (x) B^op; the result lives over B (x) A^op.
template <class F>
DerivedComplex<F> quasi_inverse(const DerivedComplex<F>& t, int w, CoverMode mode = CoverMode::automatic) {
  const auto& a = require_factors(t.algebra()).first;
  return rhom(t, exact(regular_bimodule(a)), w, Route::projective, Contract::first, mode);
}

/// T1 (x)^L_A T2 for complexes of A-bimodules.
template <class F>
DerivedComplex<F> dpic_mul(const DerivedComplex<F>& t1, const DerivedComplex<F>& t2, int w,
                           CoverMode mode = CoverMode::automatic) {
  return ltensor(t1, t2, w, TensorSide::left, mode);
}

// ---------------------------------------------------------------------------
// The square of a bimodule complex.

/// M (x)_k M over A^e with the outer action (a1 (x) a2) . (m1 (x) m2) =
/// a1 m1 (x) m2 a2, and the inner action m1 a2 (x) a1 m2 per degree.
template <class F>
struct OuterInner {
  Complex<F> outer;
  std::map<int, std::vector<Matrix<F>>> inner;
};

template <class F>
OuterInner<F> square_target(const Complex<F>& m) {
  const Algebra<F>& ae = m.algebra();
  const auto& [a, aop] = require_factors(ae);
  const F& f = ae.field();
  OuterInner<F> out;
  if (m.empty()) {
    out.outer = Complex<F>::zero(ae);
    return out;
  }
  std::size_t n = a.dim();
  int lo = 2 * m.lo(), hi = 2 * m.hi();
  std::vector<LeftModule<F>> mods;
  std::vector<std::map<int, std::size_t>> offsets;
  for (int t = lo; t <= hi; ++t) {
    std::size_t total = 0;
    std::map<int, std::size_t> off;
    for (int i = m.lo(); i <= m.hi(); ++i) {
      int j = t - i;
      if (j < m.lo() || j > m.hi()) continue;
      off[i] = total;
      total += m.dim(i) * m.dim(j);
    }
    std::vector<Matrix<F>> outer(n * n, Matrix<F>(f, total, total)), inner(n * n, Matrix<F>(f, total, total));
    for (const auto& [i, o] : off) {
      int j = t - i;
      auto li = first_factor_actions(m.module(i)), ri = second_factor_actions(m.module(i));
      auto lj = first_factor_actions(m.module(j)), rj = second_factor_actions(m.module(j));
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          outer[x * n + y].set_block(o, o, kron(li[x], rj[y]));
          inner[x * n + y].set_block(o, o, kron(ri[y], lj[x]));
        }
    }
    (void)aop;
    mods.push_back(LeftModule<F>::trusted(ae, total, std::move(outer)));
    out.inner[t] = std::move(inner);
    offsets.push_back(std::move(off));
  }
  std::vector<Matrix<F>> diffs;
  for (int t = lo; t < hi; ++t) {
    std::size_t k = static_cast<std::size_t>(t - lo);
    Matrix<F> d(f, mods[k + 1].dim(), mods[k].dim());
    for (const auto& [i, o] : offsets[k]) {
      int j = t - i;
      if (m.dim(i) * m.dim(j) == 0) continue;
      if (i + 1 <= m.hi()) d.set_block(offsets[k + 1].at(i + 1), o, kron(m.d(i), Matrix<F>::identity(f, m.dim(j))));
      if (j + 1 <= m.hi()) {
        Matrix<F> blk = kron(Matrix<F>::identity(f, m.dim(i)), m.d(j));
        if (sign_of(i) == -1) blk = negate(blk);
        d.set_block(offsets[k + 1].at(i), o, blk);
      }
    }
    diffs.push_back(std::move(d));
  }
  out.outer = Complex<F>::make(ae, lo, std::move(mods), std::move(diffs));
  return out;
}

/// Sq(M) = RHom_{A^e}(A, M (x)_k M) through the outer action, with the inner
/// action carried to the result (a complex over A^e).
template <class F>
DerivedComplex<F> square(const Complex<F>& m, int w, CoverMode mode = CoverMode::automatic) {
  const Algebra<F>& ae = m.algebra();
  const auto& a = require_factors(ae).first;
  auto target = square_target(m.trimmed());
  auto r = k_projective_resolution(Complex<F>::single(regular_bimodule(a)), w, mode);
  auto side_p = [](int, const LeftModule<F>& x) { return plain_side(x); };
  auto side_t = [&target](int t, const LeftModule<F>& x) {
    HomSide<F> s{x.dim(), x.actions(), target.inner.at(t), std::nullopt};
    return s;
  };
  DerivedComplex<F> out;
  out.window = w;
  out.complex = HomComplex<F>(r.resolving, target.outer, side_p, side_t, ae).complex();
  out.valid_hi = r.complete ? kPosInf : saturate(1LL * detail::lo_of(target.outer) + w - 1);
  return out;
}

// ---------------------------------------------------------------------------
// Hochschild cohomology.

/// dim HH^i(A, M) = dim Ext^i_{A^e}(A, M).
template <class F>
std::size_t hochschild(const Algebra<F>& a, const LeftModule<F>& m, int i, int w,
                       CoverMode mode = CoverMode::automatic) {
  if (!(m.algebra() == enveloping(a))) throw AlgebraMismatch("hochschild: M must be an A-bimodule");
  return ext(regular_bimodule(a), m.over(enveloping(a)), i, w, mode);
}

}  // namespace hcat
